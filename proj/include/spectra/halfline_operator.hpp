#pragma once

#include "spectra/airy.hpp"
#include "spectra/chebyshev.hpp"
#include "spectra/zero_finder.hpp"

namespace spectra {

/// A point on a spectral branch of the constrained half-line operator:
/// F(lambda, theta) = 0 with mu = Re lambda.
struct BranchPoint {
    double theta = 0.0;
    cplx lambda;
    double mu = 0.0;
};

class BranchSingularityError : public std::runtime_error {
public:
    BranchSingularityError(BranchPoint last, const std::string& what)
        : std::runtime_error(what), last_good(last) {}
    BranchPoint last_good;
};

struct Mu0Result {
    bool found = false;
    BranchPoint point;            // leftmost zero when found
    Rect window;
    std::vector<cplx> all_zeros;  // every zero of F(., theta) in the window
};

/// Default search window: Re in [-1, Re nu1 + 3], |Im| <= 8 (adequacy from the
/// lower bound mu >= -min(theta^2, theta^-2)/2 and the sector confinement of
/// the far zeros).
Rect mu0_default_window();
Mu0Result mu0(double theta);
Mu0Result mu0(double theta, Rect window);

/// RK4 continuation of dlambda/dtheta = -v_x(0)/v(0) - theta with a Newton
/// projection back to F = 0 after every step.
std::vector<BranchPoint> branch_trace(const BranchPoint& start, double theta_end, int steps);

/// ||v(., theta)||_2^2 / |v(0, theta)|^2 for v = Ai(e^{i pi/6}(. + i lambda)).
double branch_weight(const BranchPoint& p);

/// inf over theta of (mu_0(theta) + theta^2/2), by branch continuation on a
/// 0.05 grid with full-window re-verification, then golden-section refinement.
double hat_mu_m();

double hat_mu_0(double theta, double j_minus, double j_plus);

/// delta(alpha) = -Ai'(alpha)/Ai(alpha) + Ai'(-alpha)/Ai(-alpha).
double delta_alpha(double alpha);
/// Root of delta in (-omega_k, -omega_{k+1}) for k = 1..n.
std::vector<double> interlaced_roots(int n);

struct LThetaSpectrum {
    std::vector<cplx> values;     // |Im| <= xmax/2, sorted by (Re, Im)
    bool under_resolved = false;  // leading eigenvalue moved > 1e-4 from n to 3n/2
};

/// Matrix realization of the constrained operator on [0, xmax]: -D^2 + i x
/// with the quadrature row <e^{-theta x}, u> = 0 at x = 0 and an artificial
/// Dirichlet row at x = xmax.
LThetaSpectrum l_theta_spectrum(double theta, double xmax, int n, bool resolution_check = true);

/// Dirichlet row at 0 instead of the constraint: spectrum e^{i pi/3}|omega_n|.
std::vector<cplx> l_theta_dirichlet_spectrum(double xmax, int n);

}  // namespace spectra
