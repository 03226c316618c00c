#pragma once

#include <functional>

#include "spectra/complex_matrix.hpp"

namespace spectra {

/// Denominator A0(i lambda) too close to a zero.
class PoleProximityError : public std::runtime_error {
public:
    explicit PoleProximityError(const std::string& what) : std::runtime_error(what) {}
};

/// Airy function of the first kind on the complex plane.
/// Maclaurin series for |z| <= 9, asymptotic expansions beyond.
cplx airy_ai(cplx z);
cplx airy_ai_prime(cplx z);

namespace detail {
// both branches exposed so the overlap annulus can be checked directly
cplx airy_ai_series(cplx z);
cplx airy_ai_asymptotic(cplx z);
cplx airy_ai_prime_series(cplx z);
cplx airy_ai_prime_asymptotic(cplx z);
}  // namespace detail

/// A0(z) = e^{i pi/6} \int_z^infty Ai(e^{i pi/6} t) dt (holomorphic extension).
cplx a0(cplx z);
/// A0'(z) = -e^{i pi/6} Ai(e^{i pi/6} z).
cplx a0_prime(cplx z);

/// F(lambda, theta) = \int_0^infty e^{-theta x} Ai(e^{i pi/6}(x + i lambda)) dx.
cplx f_laplace(cplx lambda, double theta);
/// dF/dlambda = -i Ai(e^{2 pi i/3} lambda) + i theta F(lambda, theta).
cplx f_laplace_dlambda(cplx lambda, double theta);

/// Psi_lambda(x) = Ai(e^{i pi/6}(x + i lambda)) / A0(i lambda).
cplx psi_cap(cplx lambda, double x);

// Half-line moments of Psi_lambda, truncated at X_max = 40 + 2|lambda|.
double psi_cap_moment_l2(cplx lambda, double k);    // ||x^k Psi||_2
double psi_cap_moment_l1(cplx lambda, double s);    // ||x^s Psi||_1
double psi_cap_moment_linf(cplx lambda, double s);  // ||x^s Psi||_inf

enum class Side { minus, plus };

/// Boundary-layer profile psi_-/psi_+ for the affine approximation of U at the
/// walls, normalized so that its integral over the half line is (J beta)^{-1/3}.
/// `u_wall` is U at the wall the profile clings to, `j_wall` = U' there.
cplx psi_pm(Side side, double x, double beta, cplx lambda, double u_wall, double j_wall);

/// Numerical integral of psi_pm over [-1, X] (side minus) or [-X, 1] (side plus).
cplx psi_pm_integral(Side side, double beta, cplx lambda, double u_wall, double j_wall);

/// Weighted L1 moment ||(1 -/+ x)^s psi_pm||_1 over the half line.
double psi_pm_moment_l1(Side side, double s, double beta, cplx lambda, double u_wall,
                        double j_wall);

/// Composite Gauss-Legendre quadrature of f over [a, b] with panel width h.
cplx quad_gl(const std::function<cplx(double)>& f, double a, double b, double h);

/// First k negative real zeros of Ai, by bisection on the real axis.
std::vector<double> real_airy_zeros(int k);

struct SpecialConstants {
    cplx nu1;                        // leftmost eigenvalue of the Dirichlet complex-Airy operator
    double theta1r;                  // inf Re over the zeros of A0(i.)
    std::vector<double> airy_zeros;  // omega_1..omega_k, decreasing negative
};

/// Computed once and cached.
const SpecialConstants& special_constants();

}  // namespace spectra
