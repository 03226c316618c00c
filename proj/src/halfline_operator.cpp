#include "spectra/halfline_operator.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "spectra/dense_solvers.hpp"

namespace spectra {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
const cplx kRot6 = std::polar(1.0, kPi / 6.0);
const cplx kRot23 = std::polar(1.0, 2.0 * kPi / 3.0);

cplx newton_project(double theta, cplx lambda) {
    for (int it = 0; it < 50; ++it) {
        const cplx f = f_laplace(lambda, theta);
        if (std::abs(f) < 1e-13) return lambda;
        const cplx df = f_laplace_dlambda(lambda, theta);
        if (df == cplx(0.0)) break;
        lambda -= f / df;
    }
    if (std::abs(f_laplace(lambda, theta)) > 1e-9)
        throw std::runtime_error("halfline: Newton projection onto F = 0 failed");
    return lambda;
}

}  // namespace

Rect mu0_default_window() {
    const double top = special_constants().nu1.real() + 3.0;
    return {-1.0, top, -8.0, 8.0};
}

Mu0Result mu0(double theta) { return mu0(theta, mu0_default_window()); }

Mu0Result mu0(double theta, Rect window) {
    if (theta < 0.0) throw std::invalid_argument("mu0: theta must be >= 0");
    auto f = [theta](cplx z) { return f_laplace(z, theta); };
    auto df = [theta](cplx z) { return f_laplace_dlambda(z, theta); };
    ZeroSet zs = zeros_in_region(f, window, 12, df);
    Mu0Result out;
    out.window = window;
    out.all_zeros = zs.zeros;
    if (zs.zeros.empty()) return out;
    cplx best = zs.zeros.front();
    for (const auto& z : zs.zeros)
        if (z.real() < best.real()) best = z;
    out.found = true;
    out.point = {theta, best, best.real()};
    return out;
}

std::vector<BranchPoint> branch_trace(const BranchPoint& start, double theta_end, int steps) {
    if (steps < 1) throw std::invalid_argument("branch_trace: steps must be >= 1");
    if (std::abs(f_laplace(start.lambda, start.theta)) > 1e-9)
        throw std::invalid_argument("branch_trace: start point is not on F = 0");
    auto rhs = [](cplx lam, double th) {
        const cplx v0 = airy_ai(kRot23 * lam);
        if (std::abs(v0) < 1e-12)
            throw BranchSingularityError({th, lam, lam.real()},
                                         "branch_trace: v(0, theta) vanished");
        const cplx vx0 = kRot6 * airy_ai_prime(kRot23 * lam);
        return -vx0 / v0 - th;
    };
    std::vector<BranchPoint> out;
    out.push_back({start.theta, start.lambda, start.lambda.real()});
    const double h = (theta_end - start.theta) / steps;
    cplx lam = start.lambda;
    double th = start.theta;
    for (int s = 0; s < steps; ++s) {
        try {
            const cplx k1 = rhs(lam, th);
            const cplx k2 = rhs(lam + 0.5 * h * k1, th + 0.5 * h);
            const cplx k3 = rhs(lam + 0.5 * h * k2, th + 0.5 * h);
            const cplx k4 = rhs(lam + h * k3, th + h);
            lam += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            th += h;
            lam = newton_project(th, lam);
        } catch (const BranchSingularityError&) {
            throw BranchSingularityError(out.back(), "branch_trace: singular branch derivative");
        }
        out.push_back({th, lam, lam.real()});
    }
    return out;
}

double branch_weight(const BranchPoint& p) {
    const cplx v0 = airy_ai(kRot23 * p.lambda);
    if (std::abs(v0) < 1e-12)
        throw BranchSingularityError(p, "branch_weight: v(0) vanished");
    auto f = [&](double x) { return cplx(std::norm(airy_ai(kRot6 * (x + kI * p.lambda))), 0.0); };
    const double xmax = 40.0 + 2.0 * std::abs(p.lambda);
    const double norm2 = quad_gl(f, 0.0, xmax, 1.0).real();
    return norm2 / std::norm(v0);
}

namespace {

// minimum of mu + theta^2/2 along a traced branch, with golden-section
// refinement around the grid minimizer
double branch_min(const std::vector<BranchPoint>& trace) {
    double best = 1e300;
    size_t arg = 0;
    for (size_t i = 0; i < trace.size(); ++i) {
        const double v = trace[i].mu + 0.5 * trace[i].theta * trace[i].theta;
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    if (arg == 0 || arg + 1 >= trace.size()) return best;
    double a = trace[arg - 1].theta, b = trace[arg + 1].theta;
    cplx lam_hint = trace[arg].lambda;
    auto value = [&](double th) {
        const cplx lam = newton_project(th, lam_hint);
        lam_hint = lam;
        return lam.real() + 0.5 * th * th;
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = value(c), fd = value(d);
    for (int it = 0; it < 40 && (b - a) > 1e-6; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = value(d);
        }
    }
    return std::min({best, fc, fd});
}

}  // namespace

double hat_mu_m() {
    static double cached = -1.0;
    static std::once_flag flag;
    std::call_once(flag, [] {
        // Branches are continued on the 0.05 grid up to theta = 12.  By the
        // lower bound mu >= -min(theta^2, theta^-2)/2, a branch with
        // theta >= 2.2 has mu + theta^2/2 >= 2.2^2/2 - 1/(2*2.2^2) > 2.3, so
        // full-window re-seeding is only needed on [0, 2.2].
        std::vector<std::vector<BranchPoint>> traces;
        auto seed_from = [&](double theta) {
            Mu0Result r = mu0(theta);
            for (const cplx& z : r.all_zeros) {
                bool known = false;
                for (const auto& tr : traces)
                    for (const auto& p : tr)
                        if (std::abs(p.theta - theta) < 0.051 && std::abs(p.lambda - z) < 0.05)
                            known = true;
                if (known) continue;
                BranchPoint bp{theta, z, z.real()};
                const int steps_fwd = std::max(int(std::lround((12.0 - theta) / 0.05)), 1);
                try {
                    traces.push_back(branch_trace(bp, 12.0, steps_fwd));
                } catch (const BranchSingularityError& e) {
                    traces.push_back({e.last_good});
                }
                if (theta > 0.05) {
                    const int steps_bwd = std::max(int(std::lround(theta / 0.05)), 1);
                    try {
                        traces.push_back(branch_trace(bp, 0.0, steps_bwd));
                    } catch (const BranchSingularityError& e) {
                        traces.push_back({e.last_good});
                    }
                }
            }
        };
        seed_from(0.0);
        seed_from(0.7);
        seed_from(1.4);
        seed_from(2.1);
        double best = 1e300;
        for (const auto& tr : traces) best = std::min(best, branch_min(tr));
        cached = best;
    });
    return cached;
}

double hat_mu_0(double theta, double j_minus, double j_plus) {
    if (j_minus <= 0.0 || j_plus <= 0.0)
        throw std::invalid_argument("hat_mu_0: wall shears must be positive");
    auto side = [&](double j) {
        const Mu0Result r = mu0(std::pow(j, -1.0 / 3.0) * theta);
        if (!r.found) throw std::runtime_error("hat_mu_0: no zero found in the window");
        return std::pow(j, 2.0 / 3.0) * r.point.mu;
    };
    return std::min(side(j_minus), side(j_plus));
}

double delta_alpha(double alpha) {
    const cplx am = airy_ai(cplx(-alpha));
    const cplx ap = airy_ai(cplx(alpha));
    const double guard = 1e-10;
    if (std::abs(am) < guard || std::abs(ap) < guard)
        throw std::invalid_argument("delta_alpha: alpha too close to a real Airy zero");
    return (-airy_ai_prime(cplx(alpha)) / ap + airy_ai_prime(cplx(-alpha)) / am).real();
}

std::vector<double> interlaced_roots(int n) {
    if (n < 1) throw std::invalid_argument("interlaced_roots: n must be >= 1");
    const auto omegas = real_airy_zeros(n + 1);
    std::vector<double> roots;
    for (int k = 0; k < n; ++k) {
        const double a = -omegas[k], b = -omegas[k + 1];  // increasing positive interval
        // delta runs from -inf to +inf between consecutive poles
        double eps = 1e-6 * (b - a);
        while (true) {
            if (delta_alpha(a + eps) < 0.0 && delta_alpha(b - eps) > 0.0) break;
            eps *= 1.7;
            if (eps > 0.2 * (b - a))
                throw std::runtime_error("interlaced_roots: bracket not found");
        }
        double lo = a + eps, hi = b - eps;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            (delta_alpha(mid) < 0.0 ? lo : hi) = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return roots;
}

namespace {

LThetaSpectrum l_theta_once(double theta, double xmax, int n, bool dirichlet_at_zero) {
    auto grid = build_grid(n);
    const int sz = grid.size();
    // x = xmax (1 - xi)/2: node 0 is x = 0, node n is x = xmax
    std::vector<double> x(sz);
    for (int j = 0; j < sz; ++j) x[j] = xmax * (1.0 - grid.nodes[j]) / 2.0;
    ComplexMatrix a = grid.d(2);
    a *= cplx(-4.0 / (xmax * xmax));
    for (int j = 0; j < sz; ++j) a(j, j) += kI * x[j];

    std::vector<cplx> row0(sz, cplx(0.0)), rown(sz, cplx(0.0));
    if (dirichlet_at_zero) {
        row0[0] = 1.0;
    } else {
        for (int j = 0; j < sz; ++j)
            row0[j] = (xmax / 2.0) * grid.weights[j] * std::exp(-theta * x[j]);
    }
    rown[sz - 1] = 1.0;
    auto bc = BcSpec::constrained({row0, rown});
    auto b0 = impose_bc(a, bc, grid);
    auto b1 = zero_bc_rows(ComplexMatrix::identity(sz), bc, grid);
    auto eig = pencil_eigenvalues(b0, b1, 2, cplx(0.4, 0.9));
    LThetaSpectrum out;
    for (const auto& z : eig)
        if (std::abs(z.imag()) <= xmax / 2.0) out.values.push_back(z);
    return out;
}

}  // namespace

LThetaSpectrum l_theta_spectrum(double theta, double xmax, int n, bool resolution_check) {
    if (xmax < 30.0 || n < 96)
        throw std::invalid_argument("l_theta_spectrum: need xmax >= 30 and n >= 96");
    LThetaSpectrum out = l_theta_once(theta, xmax, n, false);
    if (resolution_check && !out.values.empty()) {
        const int n2 = ((3 * n / 2) + 1) / 2 * 2;  // even
        LThetaSpectrum fine = l_theta_once(theta, xmax, n2, false);
        auto leading = [](const LThetaSpectrum& s) {
            cplx best = s.values.front();
            for (const auto& z : s.values)
                if (z.real() < best.real()) best = z;
            return best;
        };
        if (fine.values.empty() || std::abs(leading(out) - leading(fine)) > 1e-4)
            out.under_resolved = true;
    }
    return out;
}

std::vector<cplx> l_theta_dirichlet_spectrum(double xmax, int n) {
    return l_theta_once(0.0, xmax, n, true).values;
}

}  // namespace spectra
