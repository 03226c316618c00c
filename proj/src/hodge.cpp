#include "spectra/hodge.hpp"

#include <cmath>

#include "spectra/dense_solvers.hpp"

namespace spectra {

namespace {

const cplx kI(0.0, 1.0);

std::vector<cplx> zeros_like(const SpectralGrid& grid) {
    return std::vector<cplx>(grid.size(), cplx(0.0));
}

// (-D^2 + a^2) phi = rhs with Dirichlet walls
std::vector<cplx> dirichlet_poisson(const std::vector<cplx>& rhs, double alpha,
                                    const SpectralGrid& grid) {
    ComplexMatrix m = grid.d(2);
    m *= cplx(-1.0);
    for (int j = 0; j < grid.size(); ++j) m(j, j) += alpha * alpha;
    const auto bc = BcSpec::dirichlet();
    return lu_solve(lu_factor(impose_bc(m, bc, grid)), bc_rhs(rhs, bc, grid));
}

// (-D^2 + a^2) phi = rhs with the natural Neumann data phi'(walls) = u2(walls);
// for the singular n = 0 case one interior row is traded for the mean-zero row.
std::vector<cplx> neumann_poisson(const std::vector<cplx>& rhs, const std::vector<cplx>& u2,
                                  double alpha, const SpectralGrid& grid) {
    const int n = grid.n;
    const int sz = grid.size();
    ComplexMatrix m = grid.d(2);
    m *= cplx(-1.0);
    for (int j = 0; j < sz; ++j) m(j, j) += alpha * alpha;
    std::vector<cplx> b(rhs.begin(), rhs.end());
    for (int j = 0; j < sz; ++j) {
        m(0, j) = grid.d(1)(0, j);
        m(n, j) = grid.d(1)(n, j);
    }
    b[0] = u2[0];
    b[n] = u2[n];
    if (alpha == 0.0) {
        const int mid = n / 2;
        for (int j = 0; j < sz; ++j) m(mid, j) = grid.weights[j];
        b[mid] = 0.0;
    }
    return lu_solve(lu_factor(std::move(m)), b);
}

}  // namespace

PeriodicField field_add(const PeriodicField& a, const PeriodicField& b, cplx sb) {
    if (a.period != b.period) throw std::invalid_argument("field_add: period mismatch");
    PeriodicField out = a;
    for (const auto& [n, uv] : b.modes) {
        auto& slot = out.modes[n];
        if (slot.first.empty()) {
            slot.first.assign(uv.first.size(), cplx(0.0));
            slot.second.assign(uv.second.size(), cplx(0.0));
        }
        for (size_t j = 0; j < uv.first.size(); ++j) {
            slot.first[j] += sb * uv.first[j];
            slot.second[j] += sb * uv.second[j];
        }
    }
    return out;
}

double field_norm(const PeriodicField& f, const SpectralGrid& grid) {
    double s = 0.0;
    for (const auto& [n, uv] : f.modes) {
        const double a = grid.norm_l2(uv.first);
        const double b = grid.norm_l2(uv.second);
        s += a * a + b * b;
    }
    return std::sqrt(f.period * s);
}

cplx field_inner(const PeriodicField& a, const PeriodicField& b, const SpectralGrid& grid) {
    cplx s = 0.0;
    for (const auto& [n, uv] : a.modes) {
        auto it = b.modes.find(n);
        if (it == b.modes.end()) continue;
        s += grid.inner_product(uv.first, it->second.first);
        s += grid.inner_product(uv.second, it->second.second);
    }
    return a.period * s;
}

double divergence_residual(const PeriodicField& f, const SpectralGrid& grid) {
    double worst = 0.0;
    for (const auto& [n, uv] : f.modes) {
        auto du2 = grid.d(1).apply(uv.second);
        const double a = f.alpha(n);
        for (int j = 0; j < grid.size(); ++j)
            worst = std::max(worst, std::abs(kI * a * uv.first[j] + du2[j]));
        worst = std::max({worst, std::abs(uv.second[0]), std::abs(uv.second[grid.n])});
    }
    return worst;
}

double flux(const PeriodicField& f, const SpectralGrid& grid) {
    auto it = f.modes.find(0);
    if (it == f.modes.end()) return 0.0;
    cplx s = 0.0;
    for (int j = 0; j < grid.size(); ++j) s += grid.weights[j] * it->second.first[j];
    return f.period * std::abs(s);
}

PeriodicField project_pi(const PeriodicField& f) {
    PeriodicField out(f.period);
    auto it = f.modes.find(0);
    if (it != f.modes.end()) out.modes[0] = it->second;
    return out;
}

PeriodicField project_p(const PeriodicField& f, const SpectralGrid& grid) {
    PeriodicField out(f.period);
    for (const auto& [n, uv] : f.modes) {
        const double a = f.alpha(n);
        auto du1 = grid.d(1).apply(uv.first);
        std::vector<cplx> curl(grid.size());
        for (int j = 0; j < grid.size(); ++j) curl[j] = kI * a * uv.second[j] - du1[j];
        auto phi = dirichlet_poisson(curl, a, grid);
        auto dphi = grid.d(1).apply(phi);
        std::vector<cplx> u2(grid.size());
        for (int j = 0; j < grid.size(); ++j) u2[j] = -kI * a * phi[j];
        out.modes[n] = {std::move(dphi), std::move(u2)};
    }
    return out;
}

HodgeParts hodge_decompose(const PeriodicField& f, const SpectralGrid& grid) {
    HodgeParts parts;
    parts.curl_part = PeriodicField(f.period);
    parts.div_part = project_p(f, grid);
    for (const auto& [n, uv] : f.modes) {
        const double a = f.alpha(n);
        auto du2 = grid.d(1).apply(uv.second);
        // variational form: Delta phi_c = div u with d phi_c/dn = u.n, so the
        // right side of (-Delta + a^2) phi = rhs is the negated divergence
        std::vector<cplx> div(grid.size());
        for (int j = 0; j < grid.size(); ++j) div[j] = -(kI * a * uv.first[j] + du2[j]);
        auto phi = neumann_poisson(div, uv.second, a, grid);
        std::vector<cplx> g1(grid.size());
        auto g2 = grid.d(1).apply(phi);
        for (int j = 0; j < grid.size(); ++j) g1[j] = kI * a * phi[j];
        if (n == 0) {
            // the x1-linear part of the potential is the constant component
            cplx mean = 0.0;
            for (int j = 0; j < grid.size(); ++j) mean += grid.weights[j] * uv.first[j];
            parts.constant = (mean / 2.0).real();
        }
        parts.curl_part.modes[n] = {std::move(g1), std::move(g2)};
    }
    return parts;
}

ScalarField recover_pressure(const PeriodicField& g, const SpectralGrid& grid) {
    // reject inputs with a divergence-free component
    auto div_part = project_p(g, grid);
    const double resid = field_norm(div_part, grid);
    if (resid > 1e-8 * std::max(1.0, field_norm(g, grid)))
        throw std::invalid_argument("recover_pressure: input is not curl-free");
    ScalarField q;
    q.period = g.period;
    for (const auto& [n, uv] : g.modes) {
        if (n == 0) {
            // q0' = G2(0,.), pinned to zero mean; the constant G1 component is
            // the x1-linear coefficient
            const int sz = grid.size();
            ComplexMatrix m = grid.d(1);
            std::vector<cplx> b = uv.second;
            const int mid = grid.n / 2;
            for (int j = 0; j < sz; ++j) m(mid, j) = grid.weights[j];
            b[mid] = 0.0;
            q.modes[0] = lu_solve(lu_factor(std::move(m)), b);
            cplx mean1 = 0.0;
            for (int j = 0; j < sz; ++j) mean1 += grid.weights[j] * uv.first[j];
            q.linear_coeff = (mean1 / 2.0).real();
        } else {
            const double a = g.alpha(n);
            std::vector<cplx> qn(grid.size());
            for (int j = 0; j < grid.size(); ++j) qn[j] = uv.first[j] / (kI * a);
            q.modes[n] = std::move(qn);
        }
    }
    return q;
}

PeriodicField scalar_gradient(const ScalarField& q, const SpectralGrid& grid) {
    PeriodicField out(q.period);
    for (const auto& [n, qn] : q.modes) {
        const double a = out.alpha(n);
        std::vector<cplx> g1(grid.size());
        auto g2 = grid.d(1).apply(qn);
        for (int j = 0; j < grid.size(); ++j) g1[j] = kI * a * qn[j];
        if (n == 0)
            for (int j = 0; j < grid.size(); ++j) g1[j] += q.linear_coeff;
        out.modes[n] = {std::move(g1), std::move(g2)};
    }
    return out;
}

}  // namespace spectra
