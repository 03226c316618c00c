#include "spectra/airy.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "spectra/zero_finder.hpp"

namespace spectra {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kRot6 = std::polar(1.0, kPi / 6.0);    // e^{i pi/6}
const cplx kRot23 = std::polar(1.0, 2.0 * kPi / 3.0);  // e^{2 pi i/3}

constexpr double kAi0 = 0.355028053887817239260;    // 1/(3^{2/3} Gamma(2/3))
constexpr double kAip0 = -0.258819403792806798405;  // -1/(3^{1/3} Gamma(1/3))

// asymptotic coefficients c_k and d_k = -(6k+1)/(6k-1) c_k
double asym_c(int k) {
    static std::vector<double> c = {1.0};
    while (int(c.size()) <= k) {
        const int j = int(c.size());
        c.push_back(c.back() * (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) /
                    (216.0 * j * (2.0 * j - 1.0)));
    }
    return c[k];
}

double asym_d(int k) { return -(6.0 * k + 1.0) / (6.0 * k - 1.0) * asym_c(k); }

// sum_{k} (-1)^k coef(k) / zeta^k with optimal truncation
cplx asym_sum(cplx zeta, double (*coef)(int)) {
    cplx s = coef(0);
    cplx term = 1.0;
    double prev = 1e300;
    for (int k = 1; k < 40; ++k) {
        term /= zeta;
        const cplx t = ((k % 2) ? -1.0 : 1.0) * coef(k) * term;
        if (std::abs(t) >= prev) break;
        s += t;
        prev = std::abs(t);
        if (prev < 1e-19 * std::abs(s)) break;
    }
    return s;
}

// even/odd partial sums for the oscillatory form
cplx asym_sum_even(cplx zeta, double (*coef)(int)) {
    const cplx z2 = zeta * zeta;
    cplx s = coef(0);
    cplx term = 1.0;
    double prev = 1e300;
    for (int k = 1; k < 20; ++k) {
        term /= z2;
        const cplx t = ((k % 2) ? -1.0 : 1.0) * coef(2 * k) * term;
        if (std::abs(t) >= prev) break;
        s += t;
        prev = std::abs(t);
        if (prev < 1e-19 * std::abs(s)) break;
    }
    return s;
}

cplx asym_sum_odd(cplx zeta, double (*coef)(int)) {
    const cplx z2 = zeta * zeta;
    cplx s = coef(1) / zeta;
    cplx term = 1.0 / zeta;
    double prev = std::abs(term);
    for (int k = 1; k < 20; ++k) {
        term /= z2;
        const cplx t = ((k % 2) ? -1.0 : 1.0) * coef(2 * k + 1) * term;
        if (std::abs(t) >= prev) break;
        s += t;
        prev = std::abs(t);
        if (prev < 1e-19 * std::abs(s)) break;
    }
    return s;
}

}  // namespace

// Double-double scalars: the Maclaurin branches f and g reach e^{+|zeta|}
// while Ai is e^{-|zeta|}, so the combination c1 f + c2 g cancels up to
// ~1e15 at the |z| = 9 switchover and plain doubles cannot reach 1e-9.
namespace {

struct Dd {
    double hi = 0.0, lo = 0.0;
};

inline Dd dd_from(double x) { return {x, 0.0}; }

inline Dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(Dd a, Dd b) {
    Dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const Dd r = two_sum(s.hi, s.lo);
    return r;
}

inline Dd dd_mul(Dd a, Dd b) {
    Dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline Dd dd_mul_d(Dd a, double b) {
    Dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

inline Dd dd_div_d(Dd a, double b) {
    const double q1 = a.hi / b;
    Dd r = two_prod(q1, b);
    const double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
    return two_sum(q1, q2);
}

struct DdC {
    Dd re, im;
};

inline DdC ddc_from(cplx z) { return {dd_from(z.real()), dd_from(z.imag())}; }

inline DdC ddc_add(DdC a, DdC b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline DdC ddc_mul(DdC a, DdC b) {
    const Dd rr = dd_add(dd_mul(a.re, b.re), dd_mul_d(dd_mul(a.im, b.im), -1.0));
    const Dd ii = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {rr, ii};
}

inline DdC ddc_div_d(DdC a, double b) { return {dd_div_d(a.re, b), dd_div_d(a.im, b)}; }

inline DdC ddc_mul_d(DdC a, double b) { return {dd_mul_d(a.re, b), dd_mul_d(a.im, b)}; }

inline cplx ddc_value(DdC a) { return {a.re.hi + a.re.lo, a.im.hi + a.im.lo}; }

inline double ddc_norm_est(DdC a) { return a.re.hi * a.re.hi + a.im.hi * a.im.hi; }

inline DdC ddc_mul_dd(DdC a, Dd b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

// Ai(0) and Ai'(0) split to double-double so the cancellation in
// c1 f + c2 g is not limited by the constants' rounding
const Dd kAi0Dd = {0.3550280538878172, 2.05233632436212e-17};
const Dd kAip0Dd = {-0.2588194037928068, 2.522243111610832e-17};

}  // namespace

namespace detail {

cplx airy_ai_series(cplx z) {
    if (std::norm(z) < 16.0) {  // no damaging cancellation below |z| = 4
        const cplx z3 = z * z * z;
        cplx f = 1.0, tf = 1.0;
        cplx g = z, tg = z;
        for (int k = 0; k < 200; ++k) {
            tf *= z3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
            tg *= z3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
            f += tf;
            g += tg;
            if (std::norm(tf) < 1e-38 * (std::norm(f) + 1.0) &&
                std::norm(tg) < 1e-38 * (std::norm(g) + 1.0))
                break;
        }
        return kAi0 * f + kAip0 * g;
    }
    const DdC z3 = ddc_mul(ddc_mul(ddc_from(z), ddc_from(z)), ddc_from(z));
    DdC f = ddc_from(1.0), tf = f;
    DdC g = ddc_from(z), tg = g;
    for (int k = 0; k < 260; ++k) {
        tf = ddc_div_d(ddc_mul(tf, z3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg = ddc_div_d(ddc_mul(tg, z3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
        f = ddc_add(f, tf);
        g = ddc_add(g, tg);
        if (ddc_norm_est(tf) < 1e-76 * (ddc_norm_est(f) + 1.0) &&
            ddc_norm_est(tg) < 1e-76 * (ddc_norm_est(g) + 1.0))
            break;
    }
    const DdC result = ddc_add(ddc_mul_dd(f, kAi0Dd), ddc_mul_dd(g, kAip0Dd));
    return ddc_value(result);
}

cplx airy_ai_prime_series(cplx z) {
    if (std::norm(z) < 16.0) {
        const cplx z3 = z * z * z;
        cplx fp = 0.5 * z * z, bk = fp;
        cplx gp = 1.0, dk = 1.0;
        for (int k = 1; k < 200; ++k) {
            const cplx bnext = bk * z3 * (k + 1.0) / (k * (3.0 * k + 2.0) * (3.0 * k + 3.0));
            fp += bnext;
            bk = bnext;
            const cplx dnext = dk * z3 / ((3.0 * (k - 1) + 1.0) * (3.0 * (k - 1) + 3.0));
            gp += dnext;
            dk = dnext;
            if (std::norm(bnext) < 1e-38 * (std::norm(fp) + 1.0) &&
                std::norm(dnext) < 1e-38 * (std::norm(gp) + 1.0))
                break;
        }
        return kAi0 * fp + kAip0 * gp;
    }
    const DdC z3 = ddc_mul(ddc_mul(ddc_from(z), ddc_from(z)), ddc_from(z));
    DdC fp = ddc_mul_d(ddc_mul(ddc_from(z), ddc_from(z)), 0.5), bk = fp;
    DdC gp = ddc_from(1.0), dk = gp;
    for (int k = 1; k < 260; ++k) {
        bk = ddc_div_d(ddc_mul_d(ddc_mul(bk, z3), k + 1.0),
                       k * (3.0 * k + 2.0) * (3.0 * k + 3.0));
        fp = ddc_add(fp, bk);
        dk = ddc_div_d(ddc_mul(dk, z3), (3.0 * (k - 1) + 1.0) * (3.0 * (k - 1) + 3.0));
        gp = ddc_add(gp, dk);
        if (ddc_norm_est(bk) < 1e-76 * (ddc_norm_est(fp) + 1.0) &&
            ddc_norm_est(dk) < 1e-76 * (ddc_norm_est(gp) + 1.0))
            break;
    }
    const DdC result = ddc_add(ddc_mul_dd(fp, kAi0Dd), ddc_mul_dd(gp, kAip0Dd));
    return ddc_value(result);
}

cplx airy_ai_asymptotic(cplx z) {
    if (std::abs(std::arg(z)) <= 2.0) {
        const cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
        return 0.5 / std::sqrt(kPi) * std::pow(z, -0.25) * std::exp(-zeta) * asym_sum(zeta, asym_c);
    }
    const cplx w = -z;  // |arg w| < pi/3
    const cplx zeta = (2.0 / 3.0) * std::pow(w, 1.5);
    const cplx ph = zeta + kPi / 4.0;
    return std::pow(w, -0.25) / std::sqrt(kPi) *
           (std::sin(ph) * asym_sum_even(zeta, asym_c) -
            std::cos(ph) * asym_sum_odd(zeta, asym_c));
}

cplx airy_ai_prime_asymptotic(cplx z) {
    if (std::abs(std::arg(z)) <= 2.0) {
        const cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
        return -0.5 / std::sqrt(kPi) * std::pow(z, 0.25) * std::exp(-zeta) * asym_sum(zeta, asym_d);
    }
    const cplx w = -z;
    const cplx zeta = (2.0 / 3.0) * std::pow(w, 1.5);
    const cplx ph = zeta + kPi / 4.0;
    return -std::pow(w, 0.25) / std::sqrt(kPi) *
           (std::cos(ph) * asym_sum_even(zeta, asym_d) +
            std::sin(ph) * asym_sum_odd(zeta, asym_d));
}

}  // namespace detail

cplx airy_ai(cplx z) {
    return std::abs(z) <= 9.0 ? detail::airy_ai_series(z) : detail::airy_ai_asymptotic(z);
}

cplx airy_ai_prime(cplx z) {
    return std::abs(z) <= 9.0 ? detail::airy_ai_prime_series(z)
                              : detail::airy_ai_prime_asymptotic(z);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace {

struct GlRule {
    std::vector<double> x, w;  // on [-1, 1]
};

const GlRule& gl20() {
    static GlRule rule;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const int n = 20;
        rule.x.resize(n);
        rule.w.resize(n);
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.x[i] = -x;
            rule.x[n - 1 - i] = x;
            rule.w[i] = w;
            rule.w[n - 1 - i] = w;
        }
    });
    return rule;
}

}  // namespace

cplx quad_gl(const std::function<cplx(double)>& f, double a, double b, double h) {
    const GlRule& rule = gl20();
    const int panels = std::max(1, int(std::ceil((b - a) / h)));
    const double dp = (b - a) / panels;
    cplx total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * dp;
        const double mid = lo + 0.5 * dp, half = 0.5 * dp;
        cplx s = 0.0;
        for (size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
        total += half * s;
    }
    return total;
}

// ---------------------------------------------------------------------------
// A0 and F
// ---------------------------------------------------------------------------

namespace {

// leading asymptotic of int_xi^infty Ai(u) du for Re(xi^{3/2}) > 0
cplx airy_tail_integral(cplx xi) {
    const cplx zeta = (2.0 / 3.0) * std::pow(xi, 1.5);
    return 0.5 / std::sqrt(kPi) * std::pow(xi, -0.75) * std::exp(-zeta) *
           (1.0 - 41.0 / 72.0 / zeta);
}

}  // namespace

cplx a0(cplx z) {
    // Rotating the contour of eq-style A0 onto the real direction of the Ai
    // argument gives A0(z) = int_0^inf Ai(xi0 + s) ds with xi0 = e^{i pi/6} z;
    // the integrand then decays as fast as Ai allows.
    const cplx xi0 = kRot6 * z;
    const double panel = std::min(1.0, 8.0 / std::max(1.0, std::sqrt(std::abs(z))));
    auto integrand = [&](double s) { return airy_ai(xi0 + s); };
    cplx total = 0.0;
    double seg_start = 0.0;
    double max_mag = 0.0;
    double t_end = 10.0 + std::max(0.0, -xi0.real());
    for (int ext = 0; ext < 40; ++ext) {
        total += quad_gl(integrand, seg_start, t_end, panel);
        const cplx htail = integrand(t_end);
        max_mag = std::max(max_mag, std::abs(htail));
        const cplx tail = airy_tail_integral(xi0 + t_end);
        if (std::abs(htail) < 1e-17 * std::max(1e-30, max_mag) ||
            std::abs(tail) < 1e-15 * std::max(std::abs(total), 1e-30)) {
            return total + tail;
        }
        seg_start = t_end;
        t_end += 6.0;
    }
    return total + airy_tail_integral(xi0 + seg_start);
}

cplx a0_prime(cplx z) { return -kRot6 * airy_ai(kRot6 * z); }

cplx f_laplace(cplx lambda, double theta) {
    if (theta < 0) throw std::invalid_argument("f_laplace: theta must be >= 0");
    auto integrand = [&](double x) {
        return std::exp(-theta * x) * airy_ai(kRot6 * (x + cplx(0.0, 1.0) * lambda));
    };
    const double panel = std::min(1.0, 8.0 / std::max(1.0, std::sqrt(std::abs(lambda))));
    cplx total = 0.0;
    double seg_start = 0.0;
    // |Ai(e^{i pi/6}(x+i lambda))| starts decaying once x exceeds Im(lambda)
    double t_end = 14.0 + std::max(0.0, lambda.imag());
    double max_mag = 0.0;
    for (int ext = 0; ext < 60; ++ext) {
        total += quad_gl(integrand, seg_start, t_end, panel);
        const cplx hend = integrand(t_end);
        max_mag = std::max(max_mag, std::abs(hend));
        const cplx xi = kRot6 * (t_end + cplx(0.0, 1.0) * lambda);
        const cplx rate = theta + kRot6 * std::pow(xi, 0.5);
        const cplx tail = hend / rate;
        if (std::abs(tail) < 1e-15 * std::max(std::abs(total), 1e-30) ||
            std::abs(hend) < 1e-17 * std::max(max_mag, 1e-30)) {
            return total + tail;
        }
        seg_start = t_end;
        t_end += 8.0;
    }
    const cplx hend = integrand(seg_start);
    const cplx xi = kRot6 * (seg_start + cplx(0.0, 1.0) * lambda);
    return total + hend / (theta + kRot6 * std::pow(xi, 0.5));
}

cplx f_laplace_dlambda(cplx lambda, double theta) {
    return cplx(0.0, -1.0) * airy_ai(kRot23 * lambda) +
           cplx(0.0, 1.0) * theta * f_laplace(lambda, theta);
}

cplx psi_cap(cplx lambda, double x) {
    const cplx denom = a0(cplx(0.0, 1.0) * lambda);
    const double scale = 1.0 + std::abs(airy_ai(kRot23 * lambda));
    if (std::abs(denom) < 1e-13 * scale)
        throw PoleProximityError("psi_cap: A0(i lambda) too close to zero");
    return airy_ai(kRot6 * (x + cplx(0.0, 1.0) * lambda)) / denom;
}

namespace {

double psi_cap_xmax(cplx lambda) { return 40.0 + 2.0 * std::abs(lambda); }

}  // namespace

double psi_cap_moment_l2(cplx lambda, double k) {
    const double xmax = psi_cap_xmax(lambda);
    const cplx denom = a0(cplx(0.0, 1.0) * lambda);
    const double scale = 1.0 + std::abs(airy_ai(kRot23 * lambda));
    if (std::abs(denom) < 1e-13 * scale)
        throw PoleProximityError("psi_cap_moment: A0(i lambda) too close to zero");
    auto f = [&](double x) {
        const cplx v = airy_ai(kRot6 * (x + cplx(0.0, 1.0) * lambda)) / denom;
        return cplx(std::pow(x, 2.0 * k) * std::norm(v), 0.0);
    };
    const double panel = std::min(1.0, 8.0 / std::max(1.0, std::sqrt(std::abs(lambda))));
    return std::sqrt(quad_gl(f, 0.0, xmax, panel).real());
}

double psi_cap_moment_l1(cplx lambda, double s) {
    const double xmax = psi_cap_xmax(lambda);
    auto f = [&](double x) { return cplx(std::pow(x, s) * std::abs(psi_cap(lambda, x)), 0.0); };
    const double panel = std::min(1.0, 8.0 / std::max(1.0, std::sqrt(std::abs(lambda))));
    return quad_gl(f, 0.0, xmax, panel).real();
}

double psi_cap_moment_linf(cplx lambda, double s) {
    const double xmax = psi_cap_xmax(lambda);
    double best = 0.0;
    const int samples = 1200;
    for (int i = 0; i <= samples; ++i) {
        const double x = xmax * i / samples;
        best = std::max(best, std::pow(x, s) * std::abs(psi_cap(lambda, x)));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Boundary-layer profiles
// ---------------------------------------------------------------------------

cplx psi_pm(Side side, double x, double beta, cplx lambda, double u_wall, double j_wall) {
    const double j = std::abs(j_wall);
    const cplx lam_wall = lambda - cplx(0.0, 1.0) * u_wall;
    const cplx lam_tilde = std::cbrt(beta) / std::cbrt(j * j) * lam_wall;
    const double stretch = std::cbrt(j * beta);
    const double xi = (side == Side::minus) ? stretch * (1.0 + x) : stretch * (1.0 - x);
    return kRot6 * psi_cap(lam_tilde, xi);
}

cplx psi_pm_integral(Side side, double beta, cplx lambda, double u_wall, double j_wall) {
    const double j = std::abs(j_wall);
    const double stretch = std::cbrt(j * beta);
    const double reach = (psi_cap_xmax(lambda) + 60.0) / stretch;  // integrate until decayed
    auto f = [&](double t) {
        const double x = (side == Side::minus) ? -1.0 + t : 1.0 - t;
        return psi_pm(side, x, beta, lambda, u_wall, j_wall);
    };
    return quad_gl(f, 0.0, reach, std::min(0.5, 4.0 / stretch));
}

double psi_pm_moment_l1(Side side, double s, double beta, cplx lambda, double u_wall,
                        double j_wall) {
    const double j = std::abs(j_wall);
    const double stretch = std::cbrt(j * beta);
    const double reach = (psi_cap_xmax(lambda) + 60.0) / stretch;
    auto f = [&](double t) {
        const double x = (side == Side::minus) ? -1.0 + t : 1.0 - t;
        return cplx(std::pow(t, s) * std::abs(psi_pm(side, x, beta, lambda, u_wall, j_wall)), 0.0);
    };
    return quad_gl(f, 0.0, reach, std::min(0.5, 4.0 / stretch)).real();
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

std::vector<double> real_airy_zeros(int k) {
    std::vector<double> zeros;
    double x = -1.0;
    const double step = 0.05;
    double prev = airy_ai(cplx(x)).real();
    while (int(zeros.size()) < k) {
        const double xn = x - step;
        const double cur = airy_ai(cplx(xn)).real();
        if (prev == 0.0) zeros.push_back(x);
        if (prev * cur < 0.0) {
            double lo = xn, hi = x;  // f(lo) = cur, f(hi) = prev, opposite signs
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = airy_ai(cplx(mid)).real();
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (fm * cur < 0.0)
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < 1e-15) break;
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        x = xn;
        prev = cur;
        if (x < -80.0) throw std::runtime_error("real_airy_zeros: scan failed");
    }
    return zeros;
}

const SpecialConstants& special_constants() {
    static SpecialConstants c;
    static std::once_flag flag;
    std::call_once(flag, [] {
        c.airy_zeros = real_airy_zeros(8);
        c.nu1 = std::polar(std::abs(c.airy_zeros[0]), kPi / 3.0);
        // zeros of A0(i.) confined to pi/6 < arg < pi/2; the asymptotic sector
        // confinement keeps any further zero at larger modulus, hence larger Re.
        auto f = [](cplx z) { return a0(cplx(0.0, 1.0) * z); };
        auto df = [](cplx z) { return cplx(0.0, 1.0) * a0_prime(cplx(0.0, 1.0) * z); };
        ZeroSet zs = zeros_in_region(f, {0.0, 12.0, 0.0, 12.0}, 12, df);
        double best = 1e300;
        for (const auto& z : zs.zeros) best = std::min(best, z.real());
        c.theta1r = best;
    });
    return c;
}

}  // namespace spectra
