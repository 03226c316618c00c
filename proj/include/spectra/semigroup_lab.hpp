#pragma once

#include "spectra/operator_assembly.hpp"

namespace spectra {

/// Per-mode evolution generator on stream-function coefficients after
/// eliminating the four wall conditions; the energy metric Q realizes
/// ||grad-perp psi||_2^2 = ||psi'||^2 + alpha^2 ||psi||^2.
struct ModeGenerator {
    int mode = 0;
    double alpha = 0.0, beta = 0.0, epsilon = 0.0, period = 0.0;
    ComplexMatrix g;  // reduced generator: d psi/dt = G psi
    GramMetric q;
    OsBc bc = OsBc::S;
};

ModeGenerator mode_generator(int n, double epsilon, double period, const BaseFlow& flow,
                             const SpectralGrid& grid, OsBc bc);

/// Eigenvalues of -G (the physical decay rates Lambda).
std::vector<cplx> generator_decay_rates(const ModeGenerator& gen);

/// ||e^{tG}||_Q per t.
std::vector<double> semigroup_norm_curve(const ModeGenerator& gen, std::span<const double> ts);

/// Decay rate of the longitudinal-average heat problem: epsilon times the
/// first Dirichlet (bc = D) or second Neumann (bc = S) eigenvalue of -d^2/dx^2.
double pi_decay_rate(double epsilon, OsBc bc);

/// Closed-form envelope M(1 + 2 M (omega - omega_hat)/r) e^{-omega t}.
double gearhart_pruss_envelope(double m_hat, double omega_hat, double omega, double r_omega,
                               double t);

/// r(omega) = 1 / sup_{Re z = omega} ||(A - z)^{-1}||_Q for A = -G, measured
/// on an Im-z grid refined at the spectrum's imaginary parts.
double measured_r_omega(const ModeGenerator& gen, double omega, int im_samples = 41);

/// Geometric grid from 1e-2/(eps beta1^{2/3}) to 20/(eps beta1^{2/3}).
std::vector<double> default_t_grid(double epsilon, double beta1, int count = 25);

struct ModeCurve {
    int mode = 0;
    std::vector<double> norms;     // ||e^{tG_n}||_Q
    std::vector<double> weighted;  // e^{eps Upsilon beta1^{2/3} t} * norms
};

struct RateCheckReport {
    double upsilon = 0.0, epsilon = 0.0, period = 0.0, beta1 = 0.0;
    std::vector<double> ts;
    std::vector<ModeCurve> curves;
    double sup_weighted = 0.0;
    bool pass = false;  // weighted curves bounded (tails non-increasing)
};

/// Hypothesis classes: convex flows (part 1) or delta_2(U) small (part 2);
/// refuses anything else.
RateCheckReport theorem_rate_check(const BaseFlow& flow, double epsilon, double period, OsBc bc,
                                   double upsilon, int n_modes, const SpectralGrid& grid);

}  // namespace spectra
