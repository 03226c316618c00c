#pragma once

#include "spectra/operator_assembly.hpp"

namespace spectra {

/// One row of a resolvent scan.  resnorm = +inf marks an eigenvalue hit.
struct ScanRecord {
    double beta = 0.0, alpha = 0.0;
    cplx lambda;
    double resnorm = 0.0;
    double dxresnorm = 0.0;
    bool singular() const { return std::isinf(resnorm); }
};

struct ResolventNorms {
    double resnorm = 0.0;
    double dxresnorm = 0.0;
};

/// Weighted-L2 norms of B(lambda)^{-1} and d/dx B(lambda)^{-1} on interior data.
ResolventNorms resolvent_norm(const OperatorPencil& pencil, const SpectralGrid& grid, cplx lambda,
                              bool with_derivative = true);

/// alphas_j = max_factor * beta^{1/3} * j/(count-1), j = 0..count-1 (alpha = 0 included).
struct AlphaRule {
    int count = 7;
    double max_factor = 2.0;
    std::vector<double> alphas(double beta) const;
};

/// 41 uniform points on [U(-1)-2, U(1)+2] plus 21-point refinements of width
/// 5 beta^{-1/3} around each wall value.
struct ImGrid {
    int uniform = 41;
    int layer = 21;
    double layer_width_factor = 5.0;
    std::vector<double> points(const BaseFlow& flow, double beta) const;
};

/// Sweep of Re lambda = (upsilon beta^{2/3} - alpha^2)/beta over the Im grid.
std::vector<ScanRecord> scan(const BaseFlow& flow, OsBc bc, std::span<const double> betas,
                             const AlphaRule& arule, double upsilon, const ImGrid& imgrid,
                             const SpectralGrid& grid);

struct ExponentFit {
    double slope = 0.0, intercept = 0.0, residual = 0.0;
    int points = 0;
};

/// Least-squares line on (log beta, log sup-over-(alpha,lambda) resnorm).
/// Requires >= 3 distinct betas spanning >= 1.5 decades.
ExponentFit fit_exponent(std::span<const ScanRecord> records);

struct BStarResult {
    double value = 0.0;
    double beta1 = 0.0;
    std::vector<double> beta_grid;  // the explicit truncation of the beta-sup
    double upsilon = 0.0, epsilon = 0.0, period = 0.0;
};

/// Discrete sup of (1+alpha) resnorm + dxresnorm over the beta grid
/// {beta1, 2 beta1, 4 beta1, 8 beta1} and the scan grids.
BStarResult b_star(double upsilon, double epsilon, double period, const BaseFlow& flow, OsBc bc,
                   const SpectralGrid& grid, const AlphaRule& arule = {},
                   const ImGrid& imgrid = {});

struct RayleighProbeReport {
    std::vector<double> mus;
    std::vector<double> log_family;  // ||A^{-1} 1||_{1,2} / log(1/mu)
    std::vector<double> w1p_family;  // ||A^{-1} v||_{1,2}, v in W^{1,p}
    std::vector<double> lp_family;   // mu^{1/p} ||A^{-1} v||_{1,2}, v an L^p box
    double max_ratio_log = 0.0, max_ratio_w1p = 0.0, max_ratio_lp = 0.0;
};

/// Requires the flow in the assumption class with either a positive gamma_m
/// probe or the convexity condition.
RayleighProbeReport rayleigh_probe(const BaseFlow& flow, double p, std::span<const double> mus,
                                   std::span<const double> alphas, const SpectralGrid& grid,
                                   double nu);

struct OptimalityEntry {
    double mu = 0.0;
    double value = 0.0;  // mu^{1/2} ||phi||_{1,2}
    bool under_resolved = false;
};

struct OptimalityReport {
    std::vector<OptimalityEntry> entries;
    double min_value = 0.0, max_value = 0.0;  // over resolved entries
};

/// Box data mu^{-1/2} 1_{[x_nu, x_nu + mu]} at lambda = mu + i nu.
OptimalityReport optimality_probe(const BaseFlow& flow, double nu, std::span<const double> mus,
                                  const SpectralGrid& grid);

}  // namespace spectra
