#pragma once

#include <optional>

#include "spectra/complex_matrix.hpp"

namespace spectra {

/// Exact singular pivot during elimination; carries the pivot index.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int pivot, const std::string& what)
        : std::runtime_error(what), pivot_index(pivot) {}
    int pivot_index;
};

/// Smallest singular value fell below 1e-14 * ||M||; carries the value.
class NumericallySingularError : public std::runtime_error {
public:
    NumericallySingularError(double sigma, const std::string& what)
        : std::runtime_error(what), sigma(sigma) {}
    double sigma;
};

struct LuFactors {
    ComplexMatrix lu;       // L (unit lower) and U packed
    std::vector<int> piv;   // row swaps, piv[k] = row swapped with k
    int n = 0;
};

LuFactors lu_factor(ComplexMatrix a);
std::vector<cplx> lu_solve(const LuFactors& f, std::span<const cplx> b);
/// Solves A* x = b using the factors of A.
std::vector<cplx> lu_solve_adjoint(const LuFactors& f, std::span<const cplx> b);
ComplexMatrix lu_inverse(const LuFactors& f);

std::vector<cplx> solve_linear(const ComplexMatrix& m, std::span<const cplx> b);

struct EigResult {
    std::vector<cplx> values;  // sorted by (Re, Im)
    bool converged = true;
};

/// All eigenvalues via Hessenberg reduction + shifted QR (Wilkinson shifts).
EigResult eigenvalues(const ComplexMatrix& m);

/// Hermitian positive definite metric G = L L*, stored by its Cholesky factor.
class GramMetric {
public:
    GramMetric() = default;  // empty; assign before use
    static GramMetric from_weights(std::span<const double> w);
    static GramMetric from_matrix(const ComplexMatrix& g);
    static GramMetric euclidean(int n);

    int dim() const { return chol_.rows(); }
    const ComplexMatrix& cholesky() const { return chol_; }

    std::vector<cplx> apply_lstar(std::span<const cplx> x) const;       // L* x
    std::vector<cplx> solve_lstar(std::span<const cplx> x) const;       // L^{-*} x
    std::vector<cplx> solve_l(std::span<const cplx> x) const;           // L^{-1} x
    double norm(std::span<const cplx> x) const;                         // ||L* x||_2

    /// L_out^* M L_in^{-*}: the Euclidean representative of M between the weighted spaces.
    ComplexMatrix conjugate(const ComplexMatrix& m, const GramMetric& in) const;

private:
    explicit GramMetric(ComplexMatrix chol) : chol_(std::move(chol)) {}
    ComplexMatrix chol_;  // lower triangular, real positive diagonal
};

/// Euclidean sigma_min by inverse iteration on M*M (LU applications);
/// falls back to full Jacobi SVD for n <= 256 if the iteration stalls.
/// Throws NumericallySingularError when sigma < 1e-14 * ||M||.
double smallest_singular_value(const ComplexMatrix& m);
double smallest_singular_value(const ComplexMatrix& m, const GramMetric& out,
                               const GramMetric& in);

/// All singular values by one-sided Jacobi, descending.
std::vector<double> singular_values_jacobi(ComplexMatrix m);

double largest_singular_value(const ComplexMatrix& m);

/// e^{A} by Pade-13 scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& a);

class ExpOverflowError : public std::runtime_error {
public:
    ExpOverflowError(double bound, const std::string& what)
        : std::runtime_error(what), growth_bound(bound) {}
    double growth_bound;
};

/// Metric operator norm of e^{tM}: largest singular value of L* e^{tM} L^{-*}.
double expm_norm(const ComplexMatrix& m, double t, const GramMetric& metric);

/// Generalized eigenvalues of b0 u = z b1 u where b1 carries `n_constraints`
/// zero rows (boundary rows live in b0).  Shift-invert through
/// (b0 - shift*b1)^{-1} b1; the `n_constraints` eigenvalues pushed to infinity
/// by the constraint rows are removed.
std::vector<cplx> pencil_eigenvalues(const ComplexMatrix& b0, const ComplexMatrix& b1,
                                     int n_constraints, cplx shift = cplx(0.0));

}  // namespace spectra
