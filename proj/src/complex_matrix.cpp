#include "spectra/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace spectra {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
    ComplexMatrix m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_data(int rows, int cols, std::span<const cplx> data) {
    if (int(data.size()) != rows * cols) throw std::invalid_argument("from_data: size mismatch");
    ComplexMatrix m(rows, cols);
    std::copy(data.begin(), data.end(), m.a_.begin());
    if (!m.all_finite()) throw std::invalid_argument("from_data: non-finite entry");
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

void ComplexMatrix::set_unit_row(int i, int j) {
    cplx* r = row_ptr(i);
    std::fill(r, r + cols_, cplx(0.0));
    r[j] = 1.0;
}

void ComplexMatrix::set_row(int i, std::span<const cplx> values) {
    if (int(values.size()) != cols_) throw std::invalid_argument("set_row: size mismatch");
    std::copy(values.begin(), values.end(), row_ptr(i));
}

void ComplexMatrix::scale_row(int i, cplx s) {
    cplx* r = row_ptr(i);
    for (int j = 0; j < cols_; ++j) r[j] *= s;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
    if (int(x.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
    std::vector<cplx> y(rows_);
    for (int i = 0; i < rows_; ++i) {
        const cplx* r = row_ptr(i);
        cplx s = 0.0;
        for (int j = 0; j < cols_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<cplx> ComplexMatrix::apply_adjoint(std::span<const cplx> x) const {
    if (int(x.size()) != rows_) throw std::invalid_argument("apply_adjoint: size mismatch");
    std::vector<cplx> y(cols_, cplx(0.0));
    for (int i = 0; i < rows_; ++i) {
        const cplx* r = row_ptr(i);
        const cplx xi = x[i];
        for (int j = 0; j < cols_; ++j) y[j] += std::conj(r[j]) * xi;
    }
    return y;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        const cplx* r = row_ptr(i);
        for (int j = 0; j < cols_; ++j) s += std::abs(r[j]);
        m = std::max(m, s);
    }
    return m;
}

double ComplexMatrix::one_norm() const {
    std::vector<double> s(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const cplx* r = row_ptr(i);
        for (int j = 0; j < cols_; ++j) s[j] += std::abs(r[j]);
    }
    return s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    const int n = a.rows(), k = a.cols(), m = b.cols();
    for (int i = 0; i < n; ++i) {
        cplx* ci = c.row_ptr(i);
        for (int p = 0; p < k; ++p) {
            const cplx aip = a(i, p);
            if (aip == cplx(0.0)) continue;
            const cplx* bp = b.row_ptr(p);
            for (int j = 0; j < m; ++j) ci[j] += aip * bp[j];
        }
    }
    return c;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

double vec_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cplx vec_dot(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void vec_scale(std::span<cplx> v, cplx s) {
    for (auto& x : v) x *= s;
}

}  // namespace spectra
