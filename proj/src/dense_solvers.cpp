#include "spectra/dense_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spectra {

namespace {

void sort_complex(std::vector<cplx>& v) {
    std::sort(v.begin(), v.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

LuFactors lu_factor(ComplexMatrix a) {
    if (!a.square()) throw std::invalid_argument("lu_factor: matrix not square");
    const int n = a.rows();
    LuFactors f;
    f.piv.resize(n);
    f.n = n;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        f.piv[k] = p;
        if (best == 0.0) throw SingularMatrixError(k, "lu_factor: exactly singular pivot");
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const cplx pivot = a(k, k);
        const cplx* rk = a.row_ptr(k);
        for (int i = k + 1; i < n; ++i) {
            cplx* ri = a.row_ptr(i);
            const cplx lik = ri[k] / pivot;
            ri[k] = lik;
            if (lik == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        }
    }
    f.lu = std::move(a);
    return f;
}

std::vector<cplx> lu_solve(const LuFactors& f, std::span<const cplx> b) {
    const int n = f.n;
    if (int(b.size()) != n) throw std::invalid_argument("lu_solve: size mismatch");
    std::vector<cplx> x(b.begin(), b.end());
    for (int k = 0; k < n; ++k) {
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
        // forward elimination folded in
    }
    for (int k = 0; k < n; ++k) {
        const cplx xk = x[k];
        if (xk == cplx(0.0)) continue;
        for (int i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * xk;
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = x[i];
        const cplx* ri = f.lu.row_ptr(i);
        for (int j = i + 1; j < n; ++j) s -= ri[j] * x[j];
        x[i] = s / ri[i];
    }
    return x;
}

std::vector<cplx> lu_solve_adjoint(const LuFactors& f, std::span<const cplx> b) {
    // PA = LU  =>  A* = U* L* P, so solve U* w = b, L* z = w, then x = P^T z.
    const int n = f.n;
    if (int(b.size()) != n) throw std::invalid_argument("lu_solve_adjoint: size mismatch");
    std::vector<cplx> x(b.begin(), b.end());
    for (int i = 0; i < n; ++i) {  // U* lower triangular
        cplx s = x[i];
        for (int j = 0; j < i; ++j) s -= std::conj(f.lu(j, i)) * x[j];
        x[i] = s / std::conj(f.lu(i, i));
    }
    for (int i = n - 1; i >= 0; --i) {  // L* unit upper triangular
        cplx s = x[i];
        for (int j = i + 1; j < n; ++j) s -= std::conj(f.lu(j, i)) * x[j];
        x[i] = s;
    }
    for (int k = n - 1; k >= 0; --k)
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
    return x;
}

ComplexMatrix lu_inverse(const LuFactors& f) {
    const int n = f.n;
    ComplexMatrix inv(n, n);
    std::vector<cplx> e(n, cplx(0.0));
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        auto col = lu_solve(f, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

std::vector<cplx> solve_linear(const ComplexMatrix& m, std::span<const cplx> b) {
    return lu_solve(lu_factor(m), b);
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder Hessenberg reduction + shifted QR with deflation.
// ---------------------------------------------------------------------------

namespace {

void hessenberg_reduce(ComplexMatrix& h) {
    const int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        cplx x0 = h(k + 1, k);
        cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        cplx alpha = -phase * colnorm;
        // v = x - alpha e1, P = I - tau v v*
        std::vector<cplx> v(n - k - 1);
        for (int i = 0; i < n - k - 1; ++i) v[i] = h(k + 1 + i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (auto& c : v) vnorm2 += std::norm(c);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        // left: rows k+1..n-1, all columns
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = 0; i < n - k - 1; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= tau;
            for (int i = 0; i < n - k - 1; ++i) h(k + 1 + i, j) -= s * v[i];
        }
        // right: all rows, columns k+1..n-1
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < n - k - 1; ++j) s += h(i, k + 1 + j) * v[j];
            s *= tau;
            for (int j = 0; j < n - k - 1; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        h(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx a, cplx b) {
    if (b == cplx(0.0)) return {1.0, cplx(0.0)};
    if (a == cplx(0.0)) return {0.0, std::conj(b) / std::abs(b)};
    const double absa = std::abs(a);
    const double t = std::hypot(absa, std::abs(b));
    return {absa / t, (a / absa) * std::conj(b) / t};
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx mu1 = 0.5 * (tr + disc);
    const cplx mu2 = 0.5 * (tr - disc);
    return (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
}

}  // namespace

EigResult eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("eigenvalues: matrix not square");
    if (!m.all_finite()) throw std::invalid_argument("eigenvalues: non-finite entry");
    const int n = m.rows();
    if (n > 1024) throw std::invalid_argument("eigenvalues: dimension > 1024");
    EigResult res;
    if (n == 0) return res;
    ComplexMatrix h = m;
    hessenberg_reduce(h);
    const double hnorm = std::max(h.inf_norm(), 1e-300);

    res.values.assign(n, cplx(0.0));
    int hi = n - 1;
    int its = 0;
    const int max_its_per_eig = 60;
    while (hi >= 0) {
        // deflation scan
        int lo = hi;
        while (lo > 0) {
            double sub = std::abs(h(lo, lo - 1));
            double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (scale == 0.0) scale = hnorm;
            if (sub <= 1e-13 * scale) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            res.values[hi] = h(hi, hi);
            --hi;
            its = 0;
            continue;
        }
        if (lo == hi - 1) {
            // 2x2 block: solve directly
            const cplx a = h(lo, lo), b = h(lo, hi), c = h(hi, lo), d = h(hi, hi);
            const cplx tr = a + d, det = a * d - b * c;
            const cplx disc = std::sqrt(tr * tr - 4.0 * det);
            res.values[hi] = 0.5 * (tr + disc);
            res.values[lo] = 0.5 * (tr - disc);
            hi -= 2;
            its = 0;
            continue;
        }
        ++its;
        if (its > max_its_per_eig) {
            // give up on this block; report diagonal as-is, flagged
            for (int i = lo; i <= hi; ++i) res.values[i] = h(i, i);
            res.converged = false;
            hi = lo - 1;
            its = 0;
            continue;
        }
        cplx shift;
        if (its % 12 == 0) {
            shift = h(hi, hi) + cplx(std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2)));
        } else {
            shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        // implicit single-shift chase on [lo, hi]
        cplx x = h(lo, lo) - shift;
        cplx y = h(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            Givens g = make_givens(x, y);
            const int jlo = std::max(0, k - 1);
            for (int j = jlo; j < n; ++j) {
                const cplx t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
            const int imax = std::min(hi, k + 2);
            for (int i = 0; i <= imax; ++i) {
                const cplx t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
            if (k < hi - 1) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
    }
    sort_complex(res.values);
    return res;
}

// ---------------------------------------------------------------------------
// GramMetric
// ---------------------------------------------------------------------------

GramMetric GramMetric::from_weights(std::span<const double> w) {
    ComplexMatrix l(int(w.size()), int(w.size()));
    for (int i = 0; i < int(w.size()); ++i) {
        if (!(w[i] > 0.0)) throw std::invalid_argument("GramMetric: weights must be positive");
        l(i, i) = std::sqrt(w[i]);
    }
    return GramMetric(std::move(l));
}

GramMetric GramMetric::from_matrix(const ComplexMatrix& g) {
    if (!g.square()) throw std::invalid_argument("GramMetric: matrix not square");
    const int n = g.rows();
    ComplexMatrix l(n, n);
    for (int j = 0; j < n; ++j) {
        cplx djj = g(j, j);
        for (int k = 0; k < j; ++k) djj -= l(j, k) * std::conj(l(j, k));
        const double d = djj.real();
        if (!(d > 0.0) || std::abs(djj.imag()) > 1e-10 * std::max(1.0, std::abs(d)))
            throw std::invalid_argument("GramMetric: matrix not Hermitian positive definite");
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            cplx s = g(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / l(j, j).real();
        }
    }
    return GramMetric(std::move(l));
}

GramMetric GramMetric::euclidean(int n) { return GramMetric(ComplexMatrix::identity(n)); }

std::vector<cplx> GramMetric::apply_lstar(std::span<const cplx> x) const {
    const int n = dim();
    std::vector<cplx> y(n, cplx(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) y[i] += std::conj(chol_(j, i)) * x[j];
    return y;
}

std::vector<cplx> GramMetric::solve_lstar(std::span<const cplx> x) const {
    // L* upper triangular
    const int n = dim();
    std::vector<cplx> y(x.begin(), x.end());
    for (int i = n - 1; i >= 0; --i) {
        cplx s = y[i];
        for (int j = i + 1; j < n; ++j) s -= std::conj(chol_(j, i)) * y[j];
        y[i] = s / std::conj(chol_(i, i));
    }
    return y;
}

std::vector<cplx> GramMetric::solve_l(std::span<const cplx> x) const {
    const int n = dim();
    std::vector<cplx> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
        cplx s = y[i];
        for (int j = 0; j < i; ++j) s -= chol_(i, j) * y[j];
        y[i] = s / chol_(i, i);
    }
    return y;
}

double GramMetric::norm(std::span<const cplx> x) const { return vec_norm(apply_lstar(x)); }

ComplexMatrix GramMetric::conjugate(const ComplexMatrix& m, const GramMetric& in) const {
    if (m.rows() != dim() || m.cols() != in.dim())
        throw std::invalid_argument("GramMetric::conjugate: shape mismatch");
    // B = L_out^* M L_in^{-*}: apply L_out^* to columns, then solve columns of L_in^* from the right.
    const int nr = m.rows(), nc = m.cols();
    ComplexMatrix b(nr, nc);
    // rows of B from L_out^* M: b(i,:) = sum_j conj(L(j,i)) m(j,:)
    for (int i = 0; i < nr; ++i)
        for (int j = i; j < nr; ++j) {
            const cplx w = std::conj(chol_(j, i));
            if (w == cplx(0.0)) continue;
            const cplx* mj = m.row_ptr(j);
            cplx* bi = b.row_ptr(i);
            for (int k = 0; k < nc; ++k) bi[k] += w * mj[k];
        }
    // right-solve: X U = B with U = L_in^* (upper); column sweep
    const ComplexMatrix& li = in.cholesky();
    for (int j = 0; j < nc; ++j) {
        for (int k = 0; k < j; ++k) {
            const cplx u = std::conj(li(j, k));  // U(k,j)
            if (u == cplx(0.0)) continue;
            for (int i = 0; i < nr; ++i) b(i, j) -= b(i, k) * u;
        }
        const cplx d = std::conj(li(j, j));
        for (int i = 0; i < nr; ++i) b(i, j) /= d;
    }
    return b;
}

// ---------------------------------------------------------------------------
// Singular values
// ---------------------------------------------------------------------------

std::vector<double> singular_values_jacobi(ComplexMatrix m) {
    // one-sided Jacobi on columns
    const int rows = m.rows(), n = m.cols();
    if (rows < n) {
        m = m.adjoint();
        return singular_values_jacobi(std::move(m));
    }
    const double eps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool changed = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    app += std::norm(m(i, p));
                    aqq += std::norm(m(i, q));
                    apq += std::conj(m(i, p)) * m(i, q);
                }
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == cplx(0.0)) continue;
                changed = true;
                // rotate to zero the (p,q) Gram entry
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const cplx phase = apq / std::abs(apq);
                for (int i = 0; i < rows; ++i) {
                    const cplx vp = m(i, p), vq = m(i, q);
                    m(i, p) = c * vp - s * std::conj(phase) * vq;
                    m(i, q) = s * phase * vp + c * vq;
                }
            }
        }
        if (!changed) break;
    }
    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += std::norm(m(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

namespace {

std::vector<cplx> seeded_unit_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(u(rng), u(rng));
    const double nn = vec_norm(v);
    vec_scale(v, 1.0 / nn);
    return v;
}

// Power iteration for the largest eigenvalue of (M*M)^{-1}; returns sigma_min.
std::optional<double> sigma_min_inverse_iteration(const LuFactors& f) {
    const int n = f.n;
    double best = -1.0;
    for (unsigned trial = 0; trial < 2; ++trial) {
        std::vector<cplx> v = seeded_unit_vector(n, 12345u + trial * 777u);
        double lam_prev = 0.0;
        bool ok = false;
        for (int it = 0; it < 600; ++it) {
            auto z = lu_solve_adjoint(f, v);
            auto y = lu_solve(f, z);
            const double lam = vec_norm(y);
            if (lam == 0.0) return std::nullopt;
            vec_scale(std::span<cplx>(y), 1.0 / lam);
            v = std::move(y);
            if (it > 2 && std::abs(lam - lam_prev) <= 1e-11 * lam) {
                lam_prev = lam;
                ok = true;
                break;
            }
            lam_prev = lam;
        }
        if (!ok && trial == 1) return std::nullopt;
        if (lam_prev > best) best = lam_prev;
    }
    return 1.0 / std::sqrt(best);
}

}  // namespace

double smallest_singular_value(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("smallest_singular_value: matrix not square");
    const double scale = m.frobenius_norm();
    if (scale == 0.0) return 0.0;
    std::optional<double> sigma;
    try {
        const LuFactors f = lu_factor(m);
        sigma = sigma_min_inverse_iteration(f);
    } catch (const SingularMatrixError&) {
        throw NumericallySingularError(0.0, "smallest_singular_value: exactly singular");
    }
    if (!sigma) {
        if (m.rows() <= 256) {
            auto sv = singular_values_jacobi(m);
            sigma = sv.back();
        } else {
            throw std::runtime_error("smallest_singular_value: iteration stalled");
        }
    }
    if (*sigma < 1e-14 * scale)
        throw NumericallySingularError(*sigma, "smallest_singular_value: numerically singular");
    return *sigma;
}

double smallest_singular_value(const ComplexMatrix& m, const GramMetric& out,
                               const GramMetric& in) {
    return smallest_singular_value(out.conjugate(m, in));
}

double largest_singular_value(const ComplexMatrix& m) {
    const int n = m.cols();
    if (n == 0) return 0.0;
    std::vector<cplx> v = seeded_unit_vector(n, 424242u);
    double lam_prev = 0.0;
    for (int it = 0; it < 800; ++it) {
        auto w = m.apply(v);
        auto y = m.apply_adjoint(w);
        const double lam = vec_norm(y);
        if (lam == 0.0) return 0.0;
        vec_scale(std::span<cplx>(y), 1.0 / lam);
        v = std::move(y);
        if (it > 2 && std::abs(lam - lam_prev) <= 1e-12 * lam) return std::sqrt(lam);
        lam_prev = lam;
    }
    return std::sqrt(lam_prev);
}

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

ComplexMatrix expm(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("expm: matrix not square");
    const int n = a.rows();
    const double theta13 = 5.371920351148152;
    const double nrm = a.one_norm();
    // stiff generators land here with norms ~1e5-1e6; the squaring count grows
    // only logarithmically, and genuine overflow is caught on the way out
    if (nrm > 1e8) throw ExpOverflowError(nrm, "expm: argument norm too large");
    int s = 0;
    if (nrm > theta13) s = int(std::ceil(std::log2(nrm / theta13)));
    ComplexMatrix as = a;
    as *= std::ldexp(1.0, -s);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const ComplexMatrix a2 = as * as;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;

    ComplexMatrix w1 = cplx(b[13]) * a6 + cplx(b[11]) * a4 + cplx(b[9]) * a2;
    ComplexMatrix w2 = a6 * w1 + cplx(b[7]) * a6 + cplx(b[5]) * a4 + cplx(b[3]) * a2 + cplx(b[1]) * eye;
    ComplexMatrix u = as * w2;
    ComplexMatrix z1 = cplx(b[12]) * a6 + cplx(b[10]) * a4 + cplx(b[8]) * a2;
    ComplexMatrix v = a6 * z1 + cplx(b[6]) * a6 + cplx(b[4]) * a4 + cplx(b[2]) * a2 + cplx(b[0]) * eye;

    ComplexMatrix p = v + u;
    ComplexMatrix q = v - u;
    const LuFactors f = lu_factor(std::move(q));
    ComplexMatrix r(n, n);
    std::vector<cplx> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = p(i, j);
        auto x = lu_solve(f, col);
        for (int i = 0; i < n; ++i) r(i, j) = x[i];
    }
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

double expm_norm(const ComplexMatrix& m, double t, const GramMetric& metric) {
    if (t < 0) throw std::invalid_argument("expm_norm: t must be >= 0");
    ComplexMatrix tm = m;
    tm *= cplx(t);
    ComplexMatrix e = expm(tm);
    if (!e.all_finite()) throw ExpOverflowError(tm.one_norm(), "expm_norm: overflow");
    return largest_singular_value(metric.conjugate(e, metric));
}

// ---------------------------------------------------------------------------
// Pencil eigenvalues by shift-invert
// ---------------------------------------------------------------------------

std::vector<cplx> pencil_eigenvalues(const ComplexMatrix& b0, const ComplexMatrix& b1,
                                     int n_constraints, cplx shift) {
    if (!b0.square() || b0.rows() != b1.rows())
        throw std::invalid_argument("pencil_eigenvalues: shape mismatch");
    const int n = b0.rows();
    // fallback shifts laddered from O(1) toward the gross spectral scale
    const double scale = std::max(b0.one_norm() / std::max(b1.one_norm(), 1e-300), 1.0);
    const cplx shift_candidates[] = {shift, shift + cplx(0.37, 0.29),
                                     shift + cplx(0.137, 0.219) * std::sqrt(scale),
                                     shift - cplx(0.0731, 0.0113) * scale};
    for (const cplx& sig : shift_candidates) {
        ComplexMatrix shifted = b0;
        if (sig != cplx(0.0)) {
            ComplexMatrix sb1 = b1;
            sb1 *= sig;
            shifted -= sb1;
        }
        // row equilibration: bordered systems mix O(1) constraint rows with
        // large differential rows, which would defeat the pivot diagnostics
        std::vector<double> rscale(n, 1.0);
        for (int i = 0; i < n; ++i) {
            double rmax = 0.0;
            for (int j = 0; j < n; ++j) rmax = std::max(rmax, std::abs(shifted(i, j)));
            if (rmax > 0.0) {
                rscale[i] = 1.0 / rmax;
                shifted.scale_row(i, rscale[i]);
            }
        }
        LuFactors f;
        try {
            f = lu_factor(std::move(shifted));
        } catch (const SingularMatrixError&) {
            continue;
        }
        // a shift sitting (numerically) on an eigenvalue leaves a ruined pivot
        double minpiv = 1e300, maxpiv = 0.0;
        for (int i = 0; i < n; ++i) {
            const double p = std::abs(f.lu(i, i));
            minpiv = std::min(minpiv, p);
            maxpiv = std::max(maxpiv, p);
        }
        if (minpiv < 1e-10 * maxpiv) continue;
        ComplexMatrix tmat(n, n);
        std::vector<cplx> col(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) col[i] = rscale[i] * b1(i, j);
            auto x = lu_solve(f, col);
            for (int i = 0; i < n; ++i) tmat(i, j) = x[i];
        }
        if (!tmat.all_finite()) continue;
        EigResult eig = eigenvalues(tmat);
        std::vector<cplx> mus = eig.values;
        std::sort(mus.begin(), mus.end(),
                  [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
        double mu_max = std::abs(mus.back());
        if (mu_max == 0.0) continue;
        // the constraint rows make b1 rank-deficient: drop the near-zero mus
        if (std::abs(mus[n_constraints - 1]) > 1e-6 * mu_max && n_constraints > 0)
            continue;  // wrong separation under this shift, retry
        std::vector<cplx> lambdas;
        lambdas.reserve(n - n_constraints);
        for (int k = n_constraints; k < n; ++k) lambdas.push_back(sig + 1.0 / mus[k]);
        sort_complex(lambdas);
        return lambdas;
    }
    throw std::runtime_error("pencil_eigenvalues: no usable shift found");
}

}  // namespace spectra
