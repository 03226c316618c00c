#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spectra/dense_solvers.hpp"

using namespace spectra;

namespace {

ComplexMatrix random_matrix(int n, unsigned seed, double scale = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = scale * cplx(u(rng), u(rng));
    return m;
}

std::vector<cplx> random_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(u(rng), u(rng));
    return v;
}

// Random unitary similarity via a Householder reflector.
ComplexMatrix householder_conjugate(const ComplexMatrix& m, unsigned seed) {
    const int n = m.rows();
    auto v = random_vector(n, seed);
    const double nn = vec_norm(v);
    vec_scale(std::span<cplx>(v), 1.0 / nn);
    ComplexMatrix p = ComplexMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) -= 2.0 * v[i] * std::conj(v[j]);
    return p * m * p;  // p is unitary and Hermitian
}

bool multiset_close(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        double best = 1e300;
        size_t arg = 0;
        for (size_t k = 0; k < b.size(); ++k) {
            if (std::abs(b[k] - x) < best) {
                best = std::abs(b[k] - x);
                arg = k;
            }
        }
        if (best > tol) return false;
        b.erase(b.begin() + arg);
    }
    return true;
}

}  // namespace

TEST_CASE("solve_linear: identity and diagonal") {
    auto b = random_vector(7, 11);
    auto x = solve_linear(ComplexMatrix::identity(7), b);
    for (int i = 0; i < 7; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-14);

    std::vector<cplx> d = {1.0, 2.0, 4.0};
    auto m = ComplexMatrix::diagonal(std::span<const cplx>(d));
    std::vector<cplx> ones = {1.0, 1.0, 1.0};
    auto y = solve_linear(m, ones);
    CHECK(std::abs(y[0] - 1.0) < 1e-15);
    CHECK(std::abs(y[1] - 0.5) < 1e-15);
    CHECK(std::abs(y[2] - 0.25) < 1e-15);
}

TEST_CASE("solve_linear: residual on random 50x50") {
    auto m = random_matrix(50, 3);
    auto b = random_vector(50, 4);
    auto x = solve_linear(m, b);
    auto r = m.apply(x);
    double res = 0.0;
    for (int i = 0; i < 50; ++i) res += std::norm(r[i] - b[i]);
    CHECK(std::sqrt(res) < 1e-9);
}

TEST_CASE("solve_linear: singular pivot carries index") {
    ComplexMatrix m(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;  // column 2 entirely zero
    bool threw = false;
    try {
        std::vector<cplx> b = {1.0, 1.0, 1.0};
        solve_linear(m, b);
    } catch (const SingularMatrixError& e) {
        threw = true;
        CHECK(e.pivot_index == 2);
    }
    CHECK(threw);
}

TEST_CASE("lu_solve_adjoint solves M* x = b") {
    auto m = random_matrix(23, 9);
    auto b = random_vector(23, 10);
    auto f = lu_factor(m);
    auto x = lu_solve_adjoint(f, b);
    auto r = m.adjoint().apply(x);
    double res = 0.0;
    for (int i = 0; i < 23; ++i) res += std::norm(r[i] - b[i]);
    CHECK(std::sqrt(res) < 1e-10);
}

TEST_CASE("eigenvalues: diagonal, companion, 2x2 rotation") {
    std::vector<cplx> d = {cplx(0, 1), cplx(0, -1), cplx(3, 0)};
    auto eig = eigenvalues(ComplexMatrix::diagonal(std::span<const cplx>(d)));
    CHECK(eig.converged);
    CHECK(multiset_close(eig.values, d, 1e-12));

    // companion matrix of z^2 + 1
    ComplexMatrix comp(2, 2);
    comp(0, 1) = -1.0;
    comp(1, 0) = 1.0;
    eig = eigenvalues(comp);
    CHECK(multiset_close(eig.values, {cplx(0, 1), cplx(0, -1)}, 1e-12));

    ComplexMatrix rot(2, 2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    eig = eigenvalues(rot);
    CHECK(multiset_close(eig.values, {cplx(0, 1), cplx(0, -1)}, 1e-12));
    // characteristic polynomial cross-check: trace and determinant
    cplx tr = eig.values[0] + eig.values[1];
    cplx det = eig.values[0] * eig.values[1];
    CHECK(std::abs(tr) < 1e-12);
    CHECK(std::abs(det - 1.0) < 1e-12);
}

TEST_CASE("eigenvalues: invariance under unitary similarity") {
    for (unsigned trial = 0; trial < 12; ++trial) {
        auto m = random_matrix(14, 100 + trial);
        auto ref = eigenvalues(m);
        auto conj = eigenvalues(householder_conjugate(m, 200 + trial));
        REQUIRE(ref.converged);
        REQUIRE(conj.converged);
        CHECK(multiset_close(ref.values, conj.values, 1e-8));
    }
}

TEST_CASE("eigenvalues: normal matrix matches diagonalization") {
    // Hermitian: eigenvalues must come out (nearly) real and match Jacobi singular values
    auto a = random_matrix(20, 55);
    ComplexMatrix h = a + a.adjoint();
    auto eig = eigenvalues(h);
    REQUIRE(eig.converged);
    for (const auto& v : eig.values) CHECK(std::abs(v.imag()) < 1e-9);
    auto sv = singular_values_jacobi(h);
    std::vector<double> absev(eig.values.size());
    for (size_t i = 0; i < eig.values.size(); ++i) absev[i] = std::abs(eig.values[i]);
    std::sort(absev.begin(), absev.end(), std::greater<double>());
    for (size_t i = 0; i < sv.size(); ++i) CHECK(std::abs(absev[i] - sv[i]) < 1e-9 * (1 + sv[0]));
}

TEST_CASE("smallest_singular_value: identity and diagonal") {
    CHECK(smallest_singular_value(ComplexMatrix::identity(6)) == doctest::Approx(1.0).epsilon(1e-10));
    std::vector<cplx> d = {3.0, 1e-3};
    CHECK(smallest_singular_value(ComplexMatrix::diagonal(std::span<const cplx>(d))) ==
          doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("smallest_singular_value: dual-method oracle on random 40x40") {
    auto m = random_matrix(40, 77);
    double s1 = smallest_singular_value(m);
    auto sv = singular_values_jacobi(m);
    CHECK(std::abs(s1 - sv.back()) < 1e-7 * sv.back());
}

TEST_CASE("smallest_singular_value: sigma_min * ||M^-1|| == 1") {
    for (unsigned trial = 0; trial < 6; ++trial) {
        auto m = random_matrix(25, 300 + trial);
        double smin = smallest_singular_value(m);
        auto inv = lu_inverse(lu_factor(m));
        double big = largest_singular_value(inv);
        CHECK(std::abs(smin * big - 1.0) < 1e-8);
    }
}

TEST_CASE("smallest_singular_value: numerically singular flagged") {
    std::vector<cplx> d = {1.0, 1e-16};
    bool threw = false;
    try {
        smallest_singular_value(ComplexMatrix::diagonal(std::span<const cplx>(d)));
    } catch (const NumericallySingularError& e) {
        threw = true;
        CHECK(e.sigma < 1e-14);
    }
    CHECK(threw);
}

TEST_CASE("GramMetric: cholesky reproduces the matrix and weighted norms work") {
    auto a = random_matrix(9, 21);
    ComplexMatrix g = a * a.adjoint() + cplx(9.0) * ComplexMatrix::identity(9);
    auto metric = GramMetric::from_matrix(g);
    const auto& l = metric.cholesky();
    ComplexMatrix rec = l * l.adjoint();
    CHECK((rec - g).max_abs() < 1e-10 * g.max_abs());

    auto x = random_vector(9, 22);
    // ||x||_G^2 = x* G x
    auto gx = g.apply(x);
    double direct = std::sqrt(std::abs(vec_dot(x, gx)));
    CHECK(metric.norm(x) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("weighted smallest singular value: diagonal metric sanity") {
    // M = diag(2, 5), out metric weights (4, 1), in metric weights (1, 1):
    // B = diag(2,1) * M * diag(1,1)^-1 = diag(4,5) -> sigma_min 4
    std::vector<double> wout = {4.0, 1.0}, win = {1.0, 1.0};
    std::vector<cplx> d = {2.0, 5.0};
    auto m = ComplexMatrix::diagonal(std::span<const cplx>(d));
    double s = smallest_singular_value(m, GramMetric::from_weights(wout), GramMetric::from_weights(win));
    CHECK(s == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("expm_norm: identity semigroup, diagonal decay, transient growth") {
    ComplexMatrix z(4, 4);
    CHECK(expm_norm(z, 3.7, GramMetric::euclidean(4)) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<cplx> d = {-1.0, -2.0};
    auto m = ComplexMatrix::diagonal(std::span<const cplx>(d));
    CHECK(expm_norm(m, 1.0, GramMetric::euclidean(2)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // closed-form 2x2: e^{tM} = e^{-t} [[1, 10t], [0, 1]]
    ComplexMatrix jd(2, 2);
    jd(0, 0) = -1.0;
    jd(0, 1) = 10.0;
    jd(1, 1) = -1.0;
    double nrm = expm_norm(jd, 1.0, GramMetric::euclidean(2));
    CHECK(nrm >= std::exp(-1.0) * 10.0 * (1.0 - 1e-10));
    // sigma_max of [[1,10],[0,1]] is sqrt(51 + sqrt(2600))
    double sig = std::sqrt(51.0 + std::sqrt(2600.0));
    CHECK(nrm == doctest::Approx(std::exp(-1.0) * sig).epsilon(1e-10));
}

TEST_CASE("expm_norm: submultiplicative on sampled (s, t)") {
    auto m = random_matrix(10, 91, 0.8);
    auto metric = GramMetric::euclidean(10);
    const double pairs[][2] = {{0.3, 0.4}, {0.1, 1.2}, {0.7, 0.7}};
    for (auto& p : pairs) {
        double a = expm_norm(m, p[0], metric);
        double b = expm_norm(m, p[1], metric);
        double ab = expm_norm(m, p[0] + p[1], metric);
        CHECK(ab <= a * b + 1e-10);
    }
}

TEST_CASE("pencil_eigenvalues: constraint rows are removed") {
    // rows 0,1 differential, row 2 a constraint u0+u1+3u2 = 0
    ComplexMatrix b0(3, 3), b1(3, 3);
    b0(0, 0) = 1.0;
    b0(1, 1) = 2.0;
    b0(2, 0) = 1.0;
    b0(2, 1) = 1.0;
    b0(2, 2) = 3.0;
    b1(0, 0) = 1.0;
    b1(1, 1) = 1.0;
    auto lam = pencil_eigenvalues(b0, b1, 1, cplx(0.31, 0.17));
    REQUIRE(lam.size() == 2);
    CHECK(multiset_close(lam, {cplx(1.0), cplx(2.0)}, 1e-10));
}
