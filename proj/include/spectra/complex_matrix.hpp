#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace spectra {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(std::span<const cplx> d);
    static ComplexMatrix diagonal(std::span<const double> d);
    /// Builds from row-major data and rejects NaN/Inf entries.
    static ComplexMatrix from_data(int rows, int cols, std::span<const cplx> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    cplx* row_ptr(int i) { return a_.data() + size_t(i) * cols_; }
    const cplx* row_ptr(int i) const { return a_.data() + size_t(i) * cols_; }

    std::vector<cplx>& data() { return a_; }
    const std::vector<cplx>& data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    /// Sets row i to zero except a 1 at column j.
    void set_unit_row(int i, int j);
    void set_row(int i, std::span<const cplx> values);
    void scale_row(int i, cplx s);

    std::vector<cplx> apply(std::span<const cplx> x) const;
    std::vector<cplx> apply_adjoint(std::span<const cplx> x) const;

    double frobenius_norm() const;
    double inf_norm() const;   // max row sum
    double one_norm() const;   // max column sum
    double max_abs() const;
    bool all_finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

// Vector helpers shared across the library.
double vec_norm(std::span<const cplx> v);
cplx vec_dot(std::span<const cplx> a, std::span<const cplx> b);  // conj(a).b
void vec_scale(std::span<cplx> v, cplx s);

}  // namespace spectra
