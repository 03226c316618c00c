#pragma once

#include <string>

#include "spectra/chebyshev.hpp"

namespace spectra {

/// Shear profile U on the grid with its derivative samples and the scalar
/// descriptors the estimates depend on.
struct BaseFlow {
    std::string kind;
    std::vector<double> u, du, d2u, d3u;
    double m = 0.0;          // inf |U'|
    double j_minus = 0.0;    // U'(-1)
    double j_plus = 0.0;     // U'(+1)
    double j_m = 0.0;        // min(|U'(-1)|, |U'(+1)|)
    double delta2 = 0.0;     // ||U''||_inf + ||U'''||_inf
    double s_r_radius = 0.0; // smallest r with the flow in S_r; inf when m = 0
    bool in_assumption_class = false;  // m > 0
    double u_min = 0.0, u_max = 0.0;
    double sup_du = 0.0;       // ||U'||_inf
    double inf_d2u_abs = 0.0;  // inf |U''|

    bool convexity_condition() const { return in_assumption_class && inf_d2u_abs > 0.0; }
};

/// kinds: "couette", "poiseuille", "nearly:<delta>", "convex:<c>", "zero"
BaseFlow make_flow(const std::string& kind, const SpectralGrid& grid);
BaseFlow make_flow_custom(std::span<const double> samples, const SpectralGrid& grid);

}  // namespace spectra
