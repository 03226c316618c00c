#pragma once

#include <functional>

#include "spectra/complex_matrix.hpp"

namespace spectra {

using AnalyticFn = std::function<cplx(cplx)>;

struct Rect {
    double x0, x1, y0, y1;
    cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    double diag() const { return std::hypot(x1 - x0, y1 - y0); }
    bool contains(cplx z, double slack = 0.0) const {
        return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack &&
               z.imag() <= y1 + slack;
    }
};

struct ZeroCell {
    Rect rect;
    int winding;
};

struct ZeroSet {
    std::vector<cplx> zeros;       // ordered by (Re, Im)
    std::vector<ZeroCell> cells;   // certificates, one per isolated zero
    double residual = 0.0;         // max |f| over the reported zeros
    std::vector<Rect> flagged;     // depth-exhausted cells, if any
    int winding_total() const {
        int s = 0;
        for (const auto& c : cells) s += c.winding;
        return s;
    }
    bool complete() const { return flagged.empty() && winding_total() == int(zeros.size()); }
};

/// Winding number of f around the rectangle boundary by phase tracking;
/// samples per edge double until the phase increments are resolved.
int winding_number(const AnalyticFn& f, const Rect& rect, int samples_per_edge = 512);

/// All zeros of f in rect by recursive subdivision with winding certificates
/// and Newton refinement (derivative df used if given, else a central
/// difference).  Rectangles are jittered when a boundary sample sits on a zero.
ZeroSet zeros_in_region(const AnalyticFn& f, Rect rect, int max_depth = 12,
                        const AnalyticFn& df = nullptr);

}  // namespace spectra
