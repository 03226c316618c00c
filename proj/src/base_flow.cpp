#include "spectra/base_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spectra {

namespace {

double sup_abs(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

double inf_abs(const std::vector<double>& v) {
    double s = std::numeric_limits<double>::infinity();
    for (double x : v) s = std::min(s, std::abs(x));
    return s;
}

void finish(BaseFlow& f, const SpectralGrid& grid, double sup_d4u, double exact_delta2 = -1.0) {
    const int n = grid.n;
    f.m = inf_abs(f.du);
    f.j_plus = f.du[0];  // nodes decrease: node 0 is x = +1
    f.j_minus = f.du[n];
    f.j_m = std::min(std::abs(f.j_minus), std::abs(f.j_plus));
    f.delta2 = exact_delta2 >= 0.0 ? exact_delta2 : sup_abs(f.d2u) + sup_abs(f.d3u);
    if (f.m <= 1e-10 * std::max(1.0, sup_abs(f.du))) f.m = 0.0;
    f.in_assumption_class = f.m > 0.0;
    f.sup_du = sup_abs(f.du);
    f.inf_d2u_abs = inf_abs(f.d2u);
    f.u_min = *std::min_element(f.u.begin(), f.u.end());
    f.u_max = *std::max_element(f.u.begin(), f.u.end());
    if (f.in_assumption_class) {
        const double norms = sup_abs(f.u) + f.sup_du + sup_abs(f.d2u) + sup_abs(f.d3u) + sup_d4u;
        f.s_r_radius = std::max(1.0 / f.m, norms);
    } else {
        f.s_r_radius = std::numeric_limits<double>::infinity();
    }
}

BaseFlow analytic_flow(const std::string& kind, const SpectralGrid& grid,
                       double (*u)(double, double), double (*du)(double, double),
                       double (*d2u)(double, double), double (*d3u)(double, double), double param,
                       double sup_d4u, double exact_delta2) {
    BaseFlow f;
    f.kind = kind;
    const int sz = grid.size();
    f.u.resize(sz);
    f.du.resize(sz);
    f.d2u.resize(sz);
    f.d3u.resize(sz);
    for (int j = 0; j < sz; ++j) {
        const double x = grid.nodes[j];
        f.u[j] = u(x, param);
        f.du[j] = du(x, param);
        f.d2u[j] = d2u(x, param);
        f.d3u[j] = d3u(x, param);
    }
    finish(f, grid, sup_d4u, exact_delta2);
    return f;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

BaseFlow make_flow(const std::string& kind, const SpectralGrid& grid) {
    if (kind == "couette") {
        return analytic_flow(
            kind, grid, +[](double x, double) { return x; }, +[](double, double) { return 1.0; },
            +[](double, double) { return 0.0; }, +[](double, double) { return 0.0; }, 0.0, 0.0, 0.0);
    }
    if (kind == "poiseuille") {
        return analytic_flow(
            kind, grid, +[](double x, double) { return 1.0 - x * x; },
            +[](double x, double) { return -2.0 * x; }, +[](double, double) { return -2.0; },
            +[](double, double) { return 0.0; }, 0.0, 0.0, 2.0);
    }
    if (kind == "zero") {
        return analytic_flow(
            kind, grid, +[](double, double) { return 0.0; }, +[](double, double) { return 0.0; },
            +[](double, double) { return 0.0; }, +[](double, double) { return 0.0; }, 0.0, 0.0, 0.0);
    }
    if (kind.rfind("nearly:", 0) == 0) {
        const double d = std::stod(kind.substr(7));
        if (d < 0.0) throw std::invalid_argument("make_flow: nearly:<delta> needs delta >= 0");
        return analytic_flow(
            kind, grid,
            +[](double x, double d) { return x + d * std::sin(kPi * x) / (kPi * kPi); },
            +[](double x, double d) { return 1.0 + d * std::cos(kPi * x) / kPi; },
            +[](double x, double d) { return -d * std::sin(kPi * x); },
            +[](double x, double d) { return -d * kPi * std::cos(kPi * x); }, d, d * kPi * kPi,
            d * (1.0 + kPi));
    }
    if (kind.rfind("convex:", 0) == 0) {
        const double c = std::stod(kind.substr(7));
        if (std::abs(c) >= 1.0)
            throw std::invalid_argument("make_flow: convex:<c> needs |c| < 1 so U' > 0");
        return analytic_flow(
            kind, grid, +[](double x, double c) { return x + 0.5 * c * x * x; },
            +[](double x, double c) { return 1.0 + c * x; }, +[](double, double c) { return c; },
            +[](double, double) { return 0.0; }, c, 0.0, std::abs(c));
    }
    throw std::invalid_argument("make_flow: unknown flow kind '" + kind + "'");
}

BaseFlow make_flow_custom(std::span<const double> samples, const SpectralGrid& grid) {
    if (int(samples.size()) != grid.size())
        throw std::invalid_argument("make_flow_custom: sample count does not match grid");
    BaseFlow f;
    f.kind = "custom";
    const int sz = grid.size();
    f.u.assign(samples.begin(), samples.end());
    std::vector<cplx> uc(sz);
    for (int j = 0; j < sz; ++j) uc[j] = samples[j];
    auto to_real = [sz](const std::vector<cplx>& v) {
        std::vector<double> r(sz);
        for (int j = 0; j < sz; ++j) r[j] = v[j].real();
        return r;
    };
    f.du = to_real(grid.d(1).apply(uc));
    f.d2u = to_real(grid.d(2).apply(uc));
    f.d3u = to_real(grid.d(3).apply(uc));
    std::vector<cplx> d4 = grid.d(4).apply(uc);
    double sup4 = 0.0;
    for (auto& v : d4) sup4 = std::max(sup4, std::abs(v.real()));
    finish(f, grid, sup4);
    return f;
}

}  // namespace spectra
