#include "spectra/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace spectra {

namespace {

// First-order CGL differentiation matrix with the negative-sum trick.
ComplexMatrix diff_matrix(const std::vector<double>& x) {
    const int n = int(x.size()) - 1;
    ComplexMatrix d(n + 1, n + 1);
    std::vector<double> c(n + 1, 1.0);
    c[0] = 2.0;
    c[n] = 2.0;
    for (int i = 0; i <= n; ++i) {
        double diag = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            const double v = (c[i] / c[j]) * sign / (x[i] - x[j]);
            d(i, j) = v;
            diag -= v;
        }
        d(i, i) = diag;
    }
    return d;
}

void fix_row_sums(ComplexMatrix& m) {
    const int n = m.rows();
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += m(i, j);
        m(i, i) = -s;
    }
}

// Clenshaw-Curtis weights for even n (Trefethen's clencurt).
std::vector<double> clenshaw_curtis(int n) {
    std::vector<double> w(n + 1, 0.0);
    w[0] = 1.0 / (double(n) * n - 1.0);
    w[n] = w[0];
    for (int i = 1; i < n; ++i) {
        const double theta = i * std::numbers::pi / n;
        double v = 1.0;
        for (int k = 1; k <= n / 2 - 1; ++k) v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        v -= std::cos(double(n) * theta) / (double(n) * n - 1.0);
        w[i] = 2.0 * v / n;
    }
    return w;
}

}  // namespace

SpectralGrid build_grid(int n) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("build_grid: n must be even and >= 8");
    SpectralGrid g;
    g.n = n;
    g.nodes.resize(n + 1);
    for (int j = 0; j <= n; ++j) g.nodes[j] = std::cos(j * std::numbers::pi / n);
    g.nodes[n / 2] = 0.0;
    g.diff[0] = diff_matrix(g.nodes);
    for (int k = 1; k < 4; ++k) {
        g.diff[k] = g.diff[k - 1] * g.diff[0];
        fix_row_sums(g.diff[k]);
    }
    g.weights = clenshaw_curtis(n);
    return g;
}

cplx SpectralGrid::inner_product(std::span<const cplx> f, std::span<const cplx> g) const {
    if (int(f.size()) != n + 1 || int(g.size()) != n + 1)
        throw std::invalid_argument("inner_product: size mismatch");
    cplx s = 0.0;
    for (int j = 0; j <= n; ++j) s += weights[j] * std::conj(f[j]) * g[j];
    return s;
}

double SpectralGrid::norm_l2(std::span<const cplx> f) const {
    return std::sqrt(std::abs(inner_product(f, f)));
}

double SpectralGrid::norm_h1(std::span<const cplx> f) const {
    auto df = diff[0].apply(f);
    const double a = norm_l2(f);
    const double b = norm_l2(df);
    return std::sqrt(a * a + b * b);
}

BcSpec BcSpec::constrained(std::vector<std::vector<cplx>> rows) {
    if (rows.empty() || rows.size() > 2)
        throw std::invalid_argument("BcSpec: one or two constraint rows");
    if (rows.size() == 2) {
        // linear independence via the 2x2 Gram determinant
        cplx g11 = 0.0, g12 = 0.0, g22 = 0.0;
        for (size_t j = 0; j < rows[0].size(); ++j) {
            g11 += std::conj(rows[0][j]) * rows[0][j];
            g12 += std::conj(rows[0][j]) * rows[1][j];
            g22 += std::conj(rows[1][j]) * rows[1][j];
        }
        const cplx det = g11 * g22 - g12 * std::conj(g12);
        if (std::abs(det) <= 1e-14 * std::abs(g11 * g22))
            throw std::invalid_argument("BcSpec: constraint rows linearly dependent");
    }
    return {Kind::constrained, std::move(rows)};
}

std::vector<int> BcSpec::bordered_rows(int n) const {
    switch (kind) {
        case Kind::dirichlet:
            return {0, n};
        case Kind::dirichlet2:
        case Kind::dirichlet4:
            return {0, 1, n - 1, n};
        case Kind::constrained:
            return constraints.size() == 1 ? std::vector<int>{0} : std::vector<int>{0, n};
    }
    return {};
}

ComplexMatrix impose_bc(const ComplexMatrix& m, const BcSpec& bc, const SpectralGrid& grid) {
    if (!m.square() || m.rows() != grid.size())
        throw std::invalid_argument("impose_bc: matrix does not match grid");
    const int n = grid.n;
    ComplexMatrix out = m;
    switch (bc.kind) {
        case BcSpec::Kind::dirichlet:
            out.set_unit_row(0, 0);
            out.set_unit_row(n, n);
            break;
        case BcSpec::Kind::dirichlet2: {
            out.set_unit_row(0, 0);
            out.set_unit_row(n, n);
            const ComplexMatrix& d2 = grid.d(2);
            for (int j = 0; j <= n; ++j) {
                out(1, j) = d2(0, j);
                out(n - 1, j) = d2(n, j);
            }
            break;
        }
        case BcSpec::Kind::dirichlet4: {
            out.set_unit_row(0, 0);
            out.set_unit_row(n, n);
            const ComplexMatrix& d1 = grid.d(1);
            for (int j = 0; j <= n; ++j) {
                out(1, j) = d1(0, j);
                out(n - 1, j) = d1(n, j);
            }
            break;
        }
        case BcSpec::Kind::constrained: {
            const auto rows = bc.bordered_rows(n);
            for (size_t k = 0; k < bc.constraints.size(); ++k) {
                if (int(bc.constraints[k].size()) != n + 1)
                    throw std::invalid_argument("impose_bc: constraint row size mismatch");
                out.set_row(rows[k], bc.constraints[k]);
            }
            break;
        }
    }
    return out;
}

ComplexMatrix zero_bc_rows(const ComplexMatrix& m, const BcSpec& bc, const SpectralGrid& grid) {
    ComplexMatrix out = m;
    for (int r : bc.bordered_rows(grid.n)) out.scale_row(r, 0.0);
    return out;
}

std::vector<cplx> bc_rhs(std::span<const cplx> f, const BcSpec& bc, const SpectralGrid& grid) {
    std::vector<cplx> rhs(f.begin(), f.end());
    for (int r : bc.bordered_rows(grid.n)) rhs[r] = 0.0;
    return rhs;
}

}  // namespace spectra
