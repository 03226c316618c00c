#include "spectra/operator_assembly.hpp"

#include <cmath>

namespace spectra {

namespace {

const cplx kI(0.0, 1.0);

ComplexMatrix schrodinger_raw(double beta, const BaseFlow& flow, const SpectralGrid& grid) {
    ComplexMatrix m = grid.d(2);
    m *= cplx(-1.0);
    for (int j = 0; j < grid.size(); ++j) m(j, j) += kI * beta * flow.u[j];
    return m;
}

}  // namespace

ComplexMatrix schrodinger_dirichlet(double beta, const BaseFlow& flow, const SpectralGrid& grid) {
    if (beta <= 0.0) throw std::invalid_argument("schrodinger_dirichlet: beta must be > 0");
    return impose_bc(schrodinger_raw(beta, flow, grid), BcSpec::dirichlet(), grid);
}

std::vector<double> constraint_profile(double alpha, bool plus_side, const SpectralGrid& grid) {
    if (alpha <= 0.0) throw std::invalid_argument("constraint_profile: alpha must be > 0");
    std::vector<double> z(grid.size());
    const bool use_exponential = alpha > 350.0;  // sinh(2 alpha) overflows
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.nodes[j];
        const double s = plus_side ? 1.0 + x : 1.0 - x;  // z(x) = sinh(a s)/sinh(2a)
        z[j] = use_exponential ? std::exp(-alpha * (2.0 - s)) * (1.0 - std::exp(-2.0 * alpha * s))
                               : std::sinh(alpha * s) / std::sinh(2.0 * alpha);
    }
    return z;
}

BcSpec constrained_bc(double alpha, const SpectralGrid& grid) {
    auto zp = constraint_profile(alpha, true, grid);
    auto zm = constraint_profile(alpha, false, grid);
    std::vector<cplx> rp(grid.size()), rm(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        rp[j] = grid.weights[j] * zp[j];
        rm[j] = grid.weights[j] * zm[j];
    }
    return BcSpec::constrained({rp, rm});
}

ComplexMatrix schrodinger_constrained(double beta, const BaseFlow& flow, const SpectralGrid& grid,
                                      double alpha) {
    if (beta <= 0.0) throw std::invalid_argument("schrodinger_constrained: beta must be > 0");
    return impose_bc(schrodinger_raw(beta, flow, grid), constrained_bc(alpha, grid), grid);
}

ComplexMatrix rayleigh_matrix(cplx lambda, double alpha, const BaseFlow& flow,
                              const SpectralGrid& grid) {
    const int sz = grid.size();
    ComplexMatrix m(sz, sz);
    const ComplexMatrix& d2 = grid.d(2);
    for (int i = 0; i < sz; ++i) {
        const cplx c = flow.u[i] + kI * lambda;
        for (int j = 0; j < sz; ++j) m(i, j) = -c * d2(i, j);
        m(i, i) += c * alpha * alpha + flow.d2u[i];
    }
    return impose_bc(m, BcSpec::dirichlet(), grid);
}

std::vector<cplx> rayleigh_solve(cplx lambda, double alpha, const BaseFlow& flow,
                                 const SpectralGrid& grid, std::span<const cplx> v, double kappa) {
    const int sz = grid.size();
    if (int(v.size()) != sz) throw std::invalid_argument("rayleigh_solve: rhs size mismatch");
    const BcSpec bc = BcSpec::dirichlet();
    if (kappa <= 0.0) {
        auto m = rayleigh_matrix(lambda, alpha, flow, grid);
        return lu_solve(lu_factor(std::move(m)), bc_rhs(v, bc, grid));
    }
    // divergence form in w = phi / (U - nu + i kappa):
    //   -(q w')' + a^2 q w = v,  q = (U - nu)^2 + kappa^2
    const double nu = lambda.imag();
    std::vector<cplx> q(sz);
    for (int j = 0; j < sz; ++j) {
        const double d = flow.u[j] - nu;
        q[j] = d * d + kappa * kappa;
    }
    const ComplexMatrix& d1 = grid.d(1);
    ComplexMatrix qd1(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) qd1(i, j) = q[i] * d1(i, j);
    ComplexMatrix m = d1 * qd1;
    m *= cplx(-1.0);
    for (int i = 0; i < sz; ++i) m(i, i) += alpha * alpha * q[i];
    m = impose_bc(m, bc, grid);
    auto w = lu_solve(lu_factor(std::move(m)), bc_rhs(v, bc, grid));
    for (int j = 0; j < sz; ++j) w[j] *= flow.u[j] - nu + kI * kappa;
    return w;
}

EmbeddedSolve rayleigh_solve_embedded(double nu, double alpha, const BaseFlow& flow,
                                      const SpectralGrid& grid, std::span<const cplx> v,
                                      std::vector<double> kappas) {
    if (kappas.empty()) throw std::invalid_argument("rayleigh_solve_embedded: empty schedule");
    EmbeddedSolve out;
    out.kappas = kappas;
    std::vector<cplx> prev;
    for (size_t k = 0; k < kappas.size(); ++k) {
        auto phi = rayleigh_solve(cplx(0.0, nu), alpha, flow, grid, v, kappas[k]);
        if (!prev.empty()) {
            std::vector<cplx> diff(phi.size());
            for (size_t j = 0; j < phi.size(); ++j) diff[j] = phi[j] - prev[j];
            out.h1_increments.push_back(grid.norm_h1(diff));
        }
        prev = std::move(phi);
    }
    for (size_t k = 1; k < out.h1_increments.size(); ++k)
        if (out.h1_increments[k] > 0.5 * out.h1_increments[k - 1]) out.stabilized = false;
    out.phi = std::move(prev);
    return out;
}

OperatorPencil orr_sommerfeld_pencil(double alpha, double beta, const BaseFlow& flow,
                                     const SpectralGrid& grid, OsBc bc) {
    // alpha enters squared; negative values are accepted and coincide with |alpha|
    if (beta <= 0.0) throw std::invalid_argument("orr_sommerfeld_pencil: need beta > 0");
    const int sz = grid.size();
    ComplexMatrix mass = grid.d(2);  // D^2 - a^2
    for (int j = 0; j < sz; ++j) mass(j, j) -= alpha * alpha;
    ComplexMatrix lb = schrodinger_raw(beta, flow, grid);
    ComplexMatrix b0 = lb * mass;
    for (int i = 0; i < sz; ++i) b0(i, i) -= kI * beta * flow.d2u[i];
    const BcSpec spec = os_bcspec(bc);
    OperatorPencil p;
    p.b0 = impose_bc(b0, spec, grid);
    p.b1 = zero_bc_rows(mass, spec, grid);
    p.bc = spec;
    p.alpha = alpha;
    p.beta = beta;
    p.flow_kind = flow.kind;
    return p;
}

std::vector<cplx> os_spectrum(const OperatorPencil& pencil, const SpectralGrid& grid, cplx shift) {
    (void)grid;
    return pencil_eigenvalues(pencil.b0, pencil.b1, 4, shift);
}

double gamma_m(cplx lambda, const BaseFlow& flow, const SpectralGrid& grid) {
    if (lambda.real() == 0.0 && lambda.imag() >= flow.u_min && lambda.imag() <= flow.u_max)
        throw std::invalid_argument("gamma_m: lambda must avoid the embedded segment");
    const int sz = grid.size();
    const double mu = lambda.real(), nu = lambda.imag();
    // interior quadratic form of 1/2 ||phi'||^2 + <U''(U-nu) phi /((U-nu)^2+mu^2), phi>
    const int m = sz - 2;
    ComplexMatrix s(m, m);
    const ComplexMatrix& d1 = grid.d(1);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            double acc = 0.0;
            for (int r = 0; r < sz; ++r)
                acc += grid.weights[r] * d1(r, a + 1).real() * d1(r, b + 1).real();
            s(a, b) = 0.5 * acc;
            s(b, a) = 0.5 * acc;
        }
    for (int a = 0; a < m; ++a) {
        const double d = flow.u[a + 1] - nu;
        s(a, a) += grid.weights[a + 1] * flow.d2u[a + 1] * d / (d * d + mu * mu);
    }
    // generalized symmetric problem S phi = gamma W phi, W = diag(weights)
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            s(a, b) /= std::sqrt(grid.weights[a + 1] * grid.weights[b + 1]);
    auto eig = eigenvalues(s);
    double best = 1e300;
    for (const auto& v : eig.values) best = std::min(best, v.real());
    return best;
}

namespace {

struct InteriorMap {
    std::vector<int> idx;        // interior node indices
    std::vector<double> sqw;     // sqrt(weight) per interior node
};

InteriorMap interior_map(const BcSpec& bc, const SpectralGrid& grid) {
    InteriorMap m;
    std::vector<bool> is_bc(grid.size(), false);
    for (int r : bc.bordered_rows(grid.n)) is_bc[r] = true;
    for (int j = 0; j < grid.size(); ++j)
        if (!is_bc[j]) {
            m.idx.push_back(j);
            m.sqw.push_back(std::sqrt(grid.weights[j]));
        }
    return m;
}

}  // namespace

std::pair<double, double> interior_resolvent_norms(const ComplexMatrix& bordered,
                                                   const BcSpec& bc, const SpectralGrid& grid) {
    const int sz = grid.size();
    const InteriorMap map = interior_map(bc, grid);
    const int m = int(map.idx.size());
    ComplexMatrix equi = bordered;
    std::vector<double> rscale(sz, 1.0);
    for (int i = 0; i < sz; ++i) {
        double rmax = 0.0;
        for (int j = 0; j < sz; ++j) rmax = std::max(rmax, std::abs(equi(i, j)));
        if (rmax > 0.0) {
            rscale[i] = 1.0 / rmax;
            equi.scale_row(i, rscale[i]);
        }
    }
    LuFactors f = lu_factor(std::move(equi));
    {
        double minpiv = 1e300, maxpiv = 0.0;
        for (int i = 0; i < sz; ++i) {
            const double p = std::abs(f.lu(i, i));
            minpiv = std::min(minpiv, p);
            maxpiv = std::max(maxpiv, p);
        }
        if (minpiv < 1e-13 * maxpiv)
            throw NumericallySingularError(minpiv / maxpiv,
                                           "interior_resolvent_norms: numerically singular");
    }
    // bordered = D^{-1} E with E factored: forward solves scale the data by D,
    // adjoint solves scale the result by D
    auto forward = [&](std::span<const cplx> fin, bool with_dx) {
        std::vector<cplx> rhs(sz, cplx(0.0));
        for (int a = 0; a < m; ++a) rhs[map.idx[a]] = fin[a] / map.sqw[a];
        for (int i = 0; i < sz; ++i) rhs[i] *= rscale[i];
        auto u = lu_solve(f, rhs);
        if (with_dx) u = grid.d(1).apply(u);
        std::vector<cplx> out(m);
        for (int a = 0; a < m; ++a) out[a] = map.sqw[a] * u[map.idx[a]];
        return out;
    };
    auto adjoint = [&](std::span<const cplx> gin, bool with_dx) {
        std::vector<cplx> y(sz, cplx(0.0));
        for (int a = 0; a < m; ++a) y[map.idx[a]] = map.sqw[a] * gin[a];
        if (with_dx) y = grid.d(1).apply_adjoint(y);
        auto u = lu_solve_adjoint(f, y);
        for (int i = 0; i < sz; ++i) u[i] *= rscale[i];
        std::vector<cplx> out(m);
        for (int a = 0; a < m; ++a) out[a] = u[map.idx[a]] / map.sqw[a];
        return out;
    };
    auto power = [&](bool with_dx) {
        std::vector<cplx> v(m);
        for (int a = 0; a < m; ++a) v[a] = cplx(std::cos(1.7 * (a + 1)), std::sin(0.9 * a + 0.3));
        double nv = vec_norm(v);
        vec_scale(std::span<cplx>(v), 1.0 / nv);
        double lam = 0.0, lam_prev = 0.0;
        for (int it = 0; it < 400; ++it) {
            auto w = forward(v, with_dx);
            auto y = adjoint(w, with_dx);
            lam = vec_norm(y);
            if (lam == 0.0) return 0.0;
            vec_scale(std::span<cplx>(y), 1.0 / lam);
            v = std::move(y);
            if (it > 3 && std::abs(lam - lam_prev) <= 1e-10 * lam) break;
            lam_prev = lam;
        }
        return std::sqrt(lam);
    };
    return {power(false), power(true)};
}

double interior_resolvent_norm(const ComplexMatrix& bordered, const BcSpec& bc,
                               const SpectralGrid& grid) {
    return interior_resolvent_norms(bordered, bc, grid).first;
}

}  // namespace spectra
