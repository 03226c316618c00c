#pragma once

#include "spectra/complex_matrix.hpp"

namespace spectra {

/// Chebyshev-Gauss-Lobatto collocation data on [-1, 1].
struct SpectralGrid {
    int n = 0;                          // node-count parameter; n+1 nodes
    std::vector<double> nodes;          // x_j = cos(j pi / n), decreasing
    ComplexMatrix diff[4];              // differentiation matrices, orders 1..4
    std::vector<double> weights;        // Clenshaw-Curtis quadrature weights

    const ComplexMatrix& d(int order) const {
        if (order < 1 || order > 4) throw std::invalid_argument("grid: derivative order 1..4");
        return diff[order - 1];
    }
    int size() const { return n + 1; }

    /// Discrete L2(-1,1) pairing sum_j w_j conj(f_j) g_j.
    cplx inner_product(std::span<const cplx> f, std::span<const cplx> g) const;
    double norm_l2(std::span<const cplx> f) const;
    /// sqrt(||f'||^2 + ||f||^2), derivative by spectral differentiation.
    double norm_h1(std::span<const cplx> f) const;
};

/// Rejects n < 8 or odd n.
SpectralGrid build_grid(int n);

struct BcSpec {
    enum class Kind {
        dirichlet2,   // u(+-1) = 0 and u''(+-1) = 0
        dirichlet4,   // u(+-1) = 0 and u'(+-1) = 0
        dirichlet,    // u(+-1) = 0
        constrained,  // rows from user functionals
    };
    Kind kind = Kind::dirichlet;
    // Discretized constraint functionals (row vectors of length n+1); for
    // `constrained` the first replaces row 0 and the second row n.
    std::vector<std::vector<cplx>> constraints;

    static BcSpec dirichlet() { return {Kind::dirichlet, {}}; }
    static BcSpec dirichlet2() { return {Kind::dirichlet2, {}}; }
    static BcSpec dirichlet4() { return {Kind::dirichlet4, {}}; }
    static BcSpec constrained(std::vector<std::vector<cplx>> rows);

    /// Row indices replaced by boundary/constraint rows.
    std::vector<int> bordered_rows(int n) const;
};

/// Boundary bordering: replaces the rows nearest the boundary with
/// boundary-condition or constraint rows; interior rows are untouched.
ComplexMatrix impose_bc(const ComplexMatrix& m, const BcSpec& bc, const SpectralGrid& grid);

/// Zeroes the bordered rows (mass side of a pencil whose constraints live in b0).
ComplexMatrix zero_bc_rows(const ComplexMatrix& m, const BcSpec& bc, const SpectralGrid& grid);

/// Right-hand side with zeros in the bordered rows.
std::vector<cplx> bc_rhs(std::span<const cplx> f, const BcSpec& bc, const SpectralGrid& grid);

}  // namespace spectra
