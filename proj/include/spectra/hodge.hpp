#pragma once

#include <map>

#include "spectra/chebyshev.hpp"

namespace spectra {

/// Periodic-channel vector field stored by Fourier mode in x1; each mode
/// carries the two velocity component profiles on the Chebyshev grid in x2.
struct PeriodicField {
    double period = 0.0;
    std::map<int, std::pair<std::vector<cplx>, std::vector<cplx>>> modes;

    PeriodicField() = default;
    explicit PeriodicField(double L) : period(L) {}
    double alpha(int n) const { return 2.0 * std::numbers::pi * n / period; }
};

PeriodicField field_add(const PeriodicField& a, const PeriodicField& b, cplx sb = 1.0);
/// Hilbert-space norm of H: sqrt(L * sum_n ||u_hat(n)||_2^2).
double field_norm(const PeriodicField& f, const SpectralGrid& grid);
cplx field_inner(const PeriodicField& a, const PeriodicField& b, const SpectralGrid& grid);

/// Max over modes of ||i a u1 + u2'||_2 (+ wall traces of u2).
double divergence_residual(const PeriodicField& f, const SpectralGrid& grid);
/// |<u, (1,0)>| = L |int u1_hat(0)|.
double flux(const PeriodicField& f, const SpectralGrid& grid);

/// Longitudinal average: keeps only the n = 0 mode.
PeriodicField project_pi(const PeriodicField& f);

/// Orthogonal projection onto divergence-free zero-flux fields: per mode,
/// -Delta phi_d = curl u with Dirichlet walls, then u = grad-perp phi_d.
PeriodicField project_p(const PeriodicField& f, const SpectralGrid& grid);

struct HodgeParts {
    PeriodicField curl_part;  // gradient of the periodic potential
    PeriodicField div_part;   // divergence-free, zero flux
    double constant = 0.0;    // coefficient of (1, 0)
};

/// u = grad phi_c + grad-perp phi_d + A (1,0), parts mutually orthogonal.
HodgeParts hodge_decompose(const PeriodicField& f, const SpectralGrid& grid);

/// Scalar pressure-like field: A x1 plus a periodic part by mode.
struct ScalarField {
    double period = 0.0;
    double linear_coeff = 0.0;
    std::map<int, std::vector<cplx>> modes;
};

/// q with grad q = G for curl-free G, zero-mean normalization.
/// Throws if G has a non-negligible divergence-free part.
ScalarField recover_pressure(const PeriodicField& g, const SpectralGrid& grid);
PeriodicField scalar_gradient(const ScalarField& q, const SpectralGrid& grid);

}  // namespace spectra
