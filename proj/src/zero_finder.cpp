#include "spectra/zero_finder.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace spectra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct WindingOutcome {
    int winding = 0;
    bool resolved = false;
    bool boundary_zero = false;
};

WindingOutcome try_winding(const AnalyticFn& f, const Rect& r, int per_edge) {
    std::vector<cplx> pts;
    pts.reserve(size_t(4) * per_edge);
    for (int k = 0; k < per_edge; ++k)
        pts.emplace_back(r.x0 + (r.x1 - r.x0) * k / per_edge, r.y0);
    for (int k = 0; k < per_edge; ++k)
        pts.emplace_back(r.x1, r.y0 + (r.y1 - r.y0) * k / per_edge);
    for (int k = 0; k < per_edge; ++k)
        pts.emplace_back(r.x1 - (r.x1 - r.x0) * k / per_edge, r.y1);
    for (int k = 0; k < per_edge; ++k)
        pts.emplace_back(r.x0, r.y1 - (r.y1 - r.y0) * k / per_edge);

    // evaluate the boundary in parallel, then unwrap the phase sequentially
    std::vector<cplx> vals(pts.size());
    {
        auto worker = [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i) vals[i] = f(pts[i]);
        };
        const size_t half = pts.size() / 2;
        std::thread t(worker, 0, half);
        worker(half, pts.size());
        t.join();
    }

    WindingOutcome out;
    double total = 0.0;
    double max_step = 0.0;
    double prev_arg = 0.0;
    double max_mag = 0.0, min_mag = 1e300;
    for (size_t i = 0; i <= pts.size(); ++i) {
        const cplx v = vals[i % vals.size()];
        const double mag = std::abs(v);
        max_mag = std::max(max_mag, mag);
        min_mag = std::min(min_mag, mag);
        if (mag == 0.0) {
            out.boundary_zero = true;
            return out;
        }
        const double a = std::arg(v);
        if (i > 0) {
            double d = a - prev_arg;
            while (d > std::numbers::pi) d -= kTwoPi;
            while (d < -std::numbers::pi) d += kTwoPi;
            total += d;
            max_step = std::max(max_step, std::abs(d));
        }
        prev_arg = a;
    }
    if (min_mag < 1e-13 * max_mag) {
        out.boundary_zero = true;
        return out;
    }
    const double w = total / kTwoPi;
    const int wi = int(std::lround(w));
    if (max_step < 2.5 && std::abs(w - wi) < 0.05) {
        out.winding = wi;
        out.resolved = true;
    }
    return out;
}

int winding_robust(const AnalyticFn& f, Rect r, int base_samples, bool& bad_cell) {
    bad_cell = false;
    for (int jitter = 0; jitter < 4; ++jitter) {
        int per_edge = base_samples;
        for (int dbl = 0; dbl < 4; ++dbl) {
            const WindingOutcome out = try_winding(f, r, per_edge);
            if (out.boundary_zero) break;  // jitter instead
            if (out.resolved) return out.winding;
            per_edge *= 2;
        }
        const double hx = 4e-3 * (r.x1 - r.x0), hy = 4e-3 * (r.y1 - r.y0);
        r = {r.x0 - hx * (1.0 + 0.31 * jitter), r.x1 + hx * (1.7 + 0.13 * jitter),
             r.y0 - hy * (1.3 + 0.41 * jitter), r.y1 + hy * (0.9 + 0.23 * jitter)};
    }
    bad_cell = true;
    return 0;
}

cplx derivative(const AnalyticFn& f, const AnalyticFn& df, cplx z, double scale) {
    if (df) return df(z);
    const double h = 1e-6 * std::max(1.0, scale);
    return (f(z + cplx(h, 0.0)) - f(z - cplx(h, 0.0))) / cplx(2.0 * h, 0.0);
}

bool newton_refine(const AnalyticFn& f, const AnalyticFn& df, const Rect& cell, cplx& z,
                   double& fz_abs, bool contained = true) {
    const double slack = 0.25 * cell.diag();
    for (int it = 0; it < 80; ++it) {
        const cplx fz = f(z);
        fz_abs = std::abs(fz);
        if (fz_abs < 1e-12) return !contained || cell.contains(z, slack);
        const cplx d = derivative(f, df, z, std::abs(z));
        if (d == cplx(0.0)) return false;
        const cplx step = fz / d;
        z -= step;
        if (contained && !cell.contains(z, 6.0 * slack)) return false;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) {
            fz_abs = std::abs(f(z));
            return fz_abs < 1e-10 && (!contained || cell.contains(z, slack));
        }
    }
    fz_abs = std::abs(f(z));
    return fz_abs < 1e-12 && (!contained || cell.contains(z, slack));
}

// A zero that keeps sitting on subdivision boundaries: converge freely from
// the cell centre, then certify with a winding box recentred on the zero.
bool rescue_zero(const AnalyticFn& f, const AnalyticFn& df, const Rect& r, ZeroSet& out) {
    cplx z = r.center();
    double res = 0.0;
    if (!newton_refine(f, df, r, z, res, /*contained=*/false)) return false;
    if (res > 1e-10) return false;
    // ignore zeros that wandered far away; the enclosing cells will find them
    if (!r.contains(z, 2.0 * r.diag())) return false;
    for (const auto& known : out.zeros)
        if (std::abs(known - z) < 1e-8 * std::max(1.0, std::abs(z))) return true;  // duplicate
    const double h = std::max(0.6 * r.diag(), 1e-7 * (1.0 + std::abs(z)));
    Rect box{z.real() - h, z.real() + h * 1.08, z.imag() - h * 0.94, z.imag() + h};
    bool bad = false;
    const int w = winding_robust(f, box, 512, bad);
    if (bad || w != 1) return false;
    out.zeros.push_back(z);
    out.cells.push_back({box, 1});
    out.residual = std::max(out.residual, res);
    return true;
}

void subdivide(const AnalyticFn& f, const AnalyticFn& df, const Rect& r, int depth, int max_depth,
               ZeroSet& out) {
    bool bad = false;
    const int w = winding_robust(f, r, 512, bad);
    if (bad) {
        // a zero pinned to this cell's boundary: smaller cells relocate it to
        // their interiors, and the deepest level recentres a box on it
        if (depth >= max_depth) {
            if (!rescue_zero(f, df, r, out)) out.flagged.push_back(r);
            return;
        }
        const double frac = (depth % 2 == 0) ? 0.503 : 0.497;
        const double xm = r.x0 + (r.x1 - r.x0) * frac, ym = r.y0 + (r.y1 - r.y0) * frac;
        subdivide(f, df, {r.x0, xm, r.y0, ym}, depth + 1, max_depth, out);
        subdivide(f, df, {xm, r.x1, r.y0, ym}, depth + 1, max_depth, out);
        subdivide(f, df, {r.x0, xm, ym, r.y1}, depth + 1, max_depth, out);
        subdivide(f, df, {xm, r.x1, ym, r.y1}, depth + 1, max_depth, out);
        return;
    }
    if (w == 0) return;
    if (w == 1) {
        cplx z = r.center();
        double res = 0.0;
        if (newton_refine(f, df, r, z, res)) {
            out.zeros.push_back(z);
            out.cells.push_back({r, w});
            out.residual = std::max(out.residual, res);
            return;
        }
    }
    if (depth >= max_depth) {
        if (!rescue_zero(f, df, r, out)) out.flagged.push_back(r);
        return;
    }
    // split slightly off centre so a zero cannot shadow the cut lines forever
    const double frac = (depth % 2 == 0) ? 0.503 : 0.497;
    const double xm = r.x0 + (r.x1 - r.x0) * frac, ym = r.y0 + (r.y1 - r.y0) * frac;
    subdivide(f, df, {r.x0, xm, r.y0, ym}, depth + 1, max_depth, out);
    subdivide(f, df, {xm, r.x1, r.y0, ym}, depth + 1, max_depth, out);
    subdivide(f, df, {r.x0, xm, ym, r.y1}, depth + 1, max_depth, out);
    subdivide(f, df, {xm, r.x1, ym, r.y1}, depth + 1, max_depth, out);
}

}  // namespace

int winding_number(const AnalyticFn& f, const Rect& rect, int samples_per_edge) {
    bool bad = false;
    const int w = winding_robust(f, rect, samples_per_edge, bad);
    if (bad) throw std::runtime_error("winding_number: zero on (jittered) boundary");
    return w;
}

ZeroSet zeros_in_region(const AnalyticFn& f, Rect rect, int max_depth, const AnalyticFn& df) {
    ZeroSet out;
    subdivide(f, df, rect, 0, max_depth, out);
    // deterministic ordering and duplicate collapse (a zero found from two
    // neighbouring cells after jitter)
    std::vector<size_t> order(out.zeros.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (out.zeros[a].real() != out.zeros[b].real())
            return out.zeros[a].real() < out.zeros[b].real();
        return out.zeros[a].imag() < out.zeros[b].imag();
    });
    ZeroSet sorted;
    sorted.residual = out.residual;
    sorted.flagged = out.flagged;
    for (size_t idx : order) {
        bool dup = false;
        for (const auto& z : sorted.zeros)
            if (std::abs(z - out.zeros[idx]) < 1e-8 * std::max(1.0, std::abs(z))) dup = true;
        if (dup) continue;
        sorted.zeros.push_back(out.zeros[idx]);
        sorted.cells.push_back(out.cells[idx]);
    }
    return sorted;
}

}  // namespace spectra
