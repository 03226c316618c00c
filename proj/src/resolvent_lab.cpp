#include "spectra/resolvent_lab.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace spectra {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

ResolventNorms resolvent_norm(const OperatorPencil& pencil, const SpectralGrid& grid, cplx lambda,
                              bool with_derivative) {
    ComplexMatrix b = pencil.at(lambda);
    try {
        if (with_derivative) {
            auto [r, dr] = interior_resolvent_norms(b, pencil.bc, grid);
            return {r, dr};
        }
        return {interior_resolvent_norm(b, pencil.bc, grid), 0.0};
    } catch (const NumericallySingularError&) {
        return {kInf, kInf};
    }
}

std::vector<double> AlphaRule::alphas(double beta) const {
    if (count < 2) throw std::invalid_argument("AlphaRule: count must be >= 2");
    std::vector<double> a(count);
    const double top = max_factor * std::cbrt(beta);
    for (int j = 0; j < count; ++j) a[j] = top * j / (count - 1);
    return a;
}

std::vector<double> ImGrid::points(const BaseFlow& flow, double beta) const {
    std::vector<double> pts;
    const double lo = flow.u_min - 2.0, hi = flow.u_max + 2.0;
    for (int j = 0; j < uniform; ++j) pts.push_back(lo + (hi - lo) * j / (uniform - 1));
    const double w = layer_width_factor * std::pow(beta, -1.0 / 3.0);
    for (double wall : {flow.u[flow.u.size() - 1], flow.u[0]}) {  // U(-1), U(+1)
        for (int j = 0; j < layer; ++j) pts.push_back(wall - w + 2.0 * w * j / (layer - 1));
    }
    return pts;
}

std::vector<ScanRecord> scan(const BaseFlow& flow, OsBc bc, std::span<const double> betas,
                             const AlphaRule& arule, double upsilon, const ImGrid& imgrid,
                             const SpectralGrid& grid) {
    std::vector<ScanRecord> records;
    for (double beta : betas) {
        const auto alphas = arule.alphas(beta);
        const auto ims = imgrid.points(flow, beta);
        for (double alpha : alphas) {
            auto pencil = orr_sommerfeld_pencil(alpha, beta, flow, grid, bc);
            const double re = (upsilon * std::pow(beta, 2.0 / 3.0) - alpha * alpha) / beta;
            for (double im : ims) {
                const cplx lam(re, im);
                const auto rn = resolvent_norm(pencil, grid, lam);
                records.push_back({beta, alpha, lam, rn.resnorm, rn.dxresnorm});
            }
        }
    }
    return records;
}

ExponentFit fit_exponent(std::span<const ScanRecord> records) {
    std::vector<double> betas;
    std::vector<double> sups;
    for (const auto& r : records) {
        if (r.singular()) continue;
        size_t k = 0;
        for (; k < betas.size(); ++k)
            if (betas[k] == r.beta) break;
        if (k == betas.size()) {
            betas.push_back(r.beta);
            sups.push_back(r.resnorm);
        } else {
            sups[k] = std::max(sups[k], r.resnorm);
        }
    }
    if (betas.size() < 3) throw std::invalid_argument("fit_exponent: need >= 3 distinct betas");
    double bmin = betas[0], bmax = betas[0];
    for (double b : betas) {
        bmin = std::min(bmin, b);
        bmax = std::max(bmax, b);
    }
    if (std::log10(bmax / bmin) < 1.5)
        throw std::invalid_argument("fit_exponent: betas must span >= 1.5 decades");
    const int n = int(betas.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        const double x = std::log(betas[k]), y = std::log(sups[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ExponentFit fit;
    fit.points = n;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = std::log(sups[k]) - (fit.intercept + fit.slope * std::log(betas[k]));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

BStarResult b_star(double upsilon, double epsilon, double period, const BaseFlow& flow, OsBc bc,
                   const SpectralGrid& grid, const AlphaRule& arule, const ImGrid& imgrid) {
    BStarResult out;
    out.upsilon = upsilon;
    out.epsilon = epsilon;
    out.period = period;
    out.beta1 = 2.0 * std::numbers::pi / (period * epsilon);
    if (out.beta1 < 500.0)
        throw std::invalid_argument("b_star: L*eps too large, beta1 must be >= 500");
    out.beta_grid = {out.beta1, 2.0 * out.beta1, 4.0 * out.beta1, 8.0 * out.beta1};
    auto records = scan(flow, bc, out.beta_grid, arule, upsilon, imgrid, grid);
    double sup = 0.0;
    for (const auto& r : records) {
        if (r.singular()) {
            sup = kInf;
            break;
        }
        sup = std::max(sup, (1.0 + r.alpha) * r.resnorm + r.dxresnorm);
    }
    out.value = sup;
    return out;
}

RayleighProbeReport rayleigh_probe(const BaseFlow& flow, double p, std::span<const double> mus,
                                   std::span<const double> alphas, const SpectralGrid& grid,
                                   double nu) {
    if (!flow.in_assumption_class)
        throw std::invalid_argument("rayleigh_probe: flow violates the shear assumption");
    if (!flow.convexity_condition()) {
        // the quadratic-form route: gamma_m must stay positive on a probe grid
        double gmin = 1e300;
        for (double mu : {0.1, 0.5})
            for (double nv : {nu, nu + 0.4})
                gmin = std::min(gmin, gamma_m(cplx(mu, nv), flow, grid));
        if (gmin <= 0.0)
            throw std::invalid_argument("rayleigh_probe: gamma_m probe not positive");
    }
    double xnu = 0.0;
    {
        double best = 1e300;
        for (int j = 0; j < grid.size(); ++j)
            if (std::abs(flow.u[j] - nu) < best) {
                best = std::abs(flow.u[j] - nu);
                xnu = grid.nodes[j];
            }
    }
    RayleighProbeReport rep;
    const int sz = grid.size();
    std::vector<cplx> v_one(sz, cplx(1.0));
    // W^{1,p} sample |x - x_nu|^a with (a-1)p > -1
    const double a = 1.0 - 1.0 / (2.0 * p);
    std::vector<cplx> v_w1p(sz);
    for (int j = 0; j < sz; ++j) v_w1p[j] = std::pow(std::abs(grid.nodes[j] - xnu), a);
    // two fixed L^p boxes around x_nu, normalized in L^p
    const double widths[2] = {0.2, 0.08};
    std::vector<std::vector<cplx>> v_boxes;
    for (double w : widths) {
        std::vector<cplx> v(sz, cplx(0.0));
        for (int j = 0; j < sz; ++j)
            if (std::abs(grid.nodes[j] - xnu) <= 0.5 * w) v[j] = std::pow(w, -1.0 / p);
        v_boxes.push_back(std::move(v));
    }
    for (double mu : mus) {
        double h_one = 0.0, h_w1p = 0.0, h_box = 0.0;
        for (double alpha : alphas) {
            const cplx lam(mu, nu);
            h_one =
                std::max(h_one, grid.norm_h1(rayleigh_solve(lam, alpha, flow, grid, v_one, 0.0)));
            h_w1p =
                std::max(h_w1p, grid.norm_h1(rayleigh_solve(lam, alpha, flow, grid, v_w1p, 0.0)));
            for (const auto& vb : v_boxes)
                h_box =
                    std::max(h_box, grid.norm_h1(rayleigh_solve(lam, alpha, flow, grid, vb, 0.0)));
        }
        rep.mus.push_back(mu);
        rep.log_family.push_back(h_one / std::log(1.0 / mu));
        rep.w1p_family.push_back(h_w1p);
        rep.lp_family.push_back(std::pow(mu, 1.0 / p) * h_box);
    }
    auto ratio = [](const std::vector<double>& v) {
        double lo = 1e300, hi = 0.0;
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return lo > 0.0 ? hi / lo : kInf;
    };
    rep.max_ratio_log = ratio(rep.log_family);
    rep.max_ratio_w1p = ratio(rep.w1p_family);
    rep.max_ratio_lp = ratio(rep.lp_family);
    return rep;
}

OptimalityReport optimality_probe(const BaseFlow& flow, double nu, std::span<const double> mus,
                                  const SpectralGrid& grid) {
    if (nu <= flow.u_min || nu >= flow.u_max)
        throw std::invalid_argument("optimality_probe: nu must be interior to the range of U");
    int jnu = 0;
    double best = 1e300;
    for (int j = 0; j < grid.size(); ++j)
        if (std::abs(flow.u[j] - nu) < best) {
            best = std::abs(flow.u[j] - nu);
            jnu = j;
        }
    const double xnu = grid.nodes[jnu];
    const double spacing = (jnu > 0 ? grid.nodes[jnu - 1] - grid.nodes[jnu]
                                    : grid.nodes[jnu] - grid.nodes[jnu + 1]);
    OptimalityReport rep;
    double lo = 1e300, hi = 0.0;
    for (double mu : mus) {
        OptimalityEntry e;
        e.mu = mu;
        if (mu < 3.0 * spacing || xnu + mu >= 1.0) {
            e.under_resolved = true;  // refine n (or move nu) to resolve the box
            rep.entries.push_back(e);
            continue;
        }
        std::vector<cplx> v(grid.size(), cplx(0.0));
        for (int j = 0; j < grid.size(); ++j)
            if (grid.nodes[j] >= xnu && grid.nodes[j] <= xnu + mu) v[j] = 1.0 / std::sqrt(mu);
        auto phi = rayleigh_solve(cplx(mu, nu), 0.0, flow, grid, v, 0.0);
        e.value = std::sqrt(mu) * grid.norm_h1(phi);
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
        rep.entries.push_back(e);
    }
    rep.min_value = lo;
    rep.max_value = hi;
    return rep;
}

}  // namespace spectra
