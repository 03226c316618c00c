#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spectra/chebyshev.hpp"
#include "spectra/dense_solvers.hpp"

using namespace spectra;

namespace {

std::vector<cplx> sample(const SpectralGrid& g, double (*f)(double)) {
    std::vector<cplx> v(g.size());
    for (int j = 0; j < g.size(); ++j) v[j] = f(g.nodes[j]);
    return v;
}

}  // namespace

TEST_CASE("build_grid: node layout and rejection") {
    auto g = build_grid(8);
    CHECK(g.nodes[0] == 1.0);
    CHECK(g.nodes[8] == -1.0);
    for (int j = 0; j < 8; ++j) CHECK(g.nodes[j] > g.nodes[j + 1]);
    CHECK_THROWS_AS(build_grid(6), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(9), std::invalid_argument);
}

TEST_CASE("build_grid: differentiation of constants and monomials") {
    auto g = build_grid(8);
    std::vector<cplx> ones(g.size(), 1.0);
    auto d1 = g.d(1).apply(ones);
    for (auto& v : d1) CHECK(std::abs(v) < 1e-12 * 64);

    auto x = sample(g, +[](double t) { return t; });
    auto dx = g.d(1).apply(x);
    for (auto& v : dx) CHECK(std::abs(v - 1.0) < 1e-12);

    auto g16 = build_grid(16);
    auto x3 = sample(g16, +[](double t) { return t * t * t; });
    auto d2x3 = g16.d(2).apply(x3);
    for (int j = 0; j < g16.size(); ++j)
        CHECK(std::abs(d2x3[j] - 6.0 * g16.nodes[j]) < 1e-10);
}

TEST_CASE("build_grid: row sums of all orders vanish") {
    for (int n : {8, 32, 128}) {
        auto g = build_grid(n);
        std::vector<cplx> ones(g.size(), 1.0);
        for (int k = 1; k <= 4; ++k) {
            auto r = g.d(k).apply(ones);
            // higher orders carry a roundoff floor set by their entry size
            const double tol = 1e-12 * n * n * std::max(1.0, g.d(k).max_abs() / (double(n) * n));
            for (auto& v : r) CHECK(std::abs(v) < tol);
        }
    }
}

TEST_CASE("build_grid: weights sum to 2 and are positive") {
    for (int n : {8, 16, 64, 128}) {
        auto g = build_grid(n);
        double s = 0.0;
        for (double w : g.weights) {
            CHECK(w > 0.0);
            s += w;
        }
        CHECK(std::abs(s - 2.0) < 1e-12);
    }
}

TEST_CASE("quadrature: exact on polynomials of degree <= n-1") {
    auto g = build_grid(16);
    // integral of x^k on [-1,1] is 0 (odd) or 2/(k+1) (even)
    for (int k = 0; k <= 15; ++k) {
        double s = 0.0;
        for (int j = 0; j < g.size(); ++j) s += g.weights[j] * std::pow(g.nodes[j], k);
        const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - exact) < 1e-12);
    }
}

TEST_CASE("spectral accuracy on exp(x)") {
    double prev = 1e300;
    for (int n : {8, 16, 32, 64}) {
        auto g = build_grid(n);
        auto f = sample(g, +[](double t) { return std::exp(t); });
        auto df = g.d(1).apply(f);
        double err = 0.0;
        for (int j = 0; j < g.size(); ++j)
            err = std::max(err, std::abs(df[j] - std::exp(g.nodes[j])));
        if (n > 8 && prev > 1e-11) CHECK(err < prev * std::pow(0.5, 4));  // beats any fixed power
        prev = err;
    }
    CHECK(prev < 1e-11);
}

TEST_CASE("inner_product examples and size checking") {
    auto g = build_grid(16);
    std::vector<cplx> one(g.size(), 1.0);
    auto x = sample(g, +[](double t) { return t; });
    CHECK(std::abs(g.inner_product(one, one) - 2.0) < 1e-13);
    CHECK(std::abs(g.inner_product(one, x)) < 1e-13);
    CHECK(std::abs(g.inner_product(x, x) - 2.0 / 3.0) < 1e-12);
    std::vector<cplx> wrong(g.size() + 1, 1.0);
    CHECK_THROWS_AS(g.inner_product(wrong, one), std::invalid_argument);
}

TEST_CASE("impose_bc: unit rows for dirichlet, interior untouched") {
    auto g = build_grid(12);
    auto m = ComplexMatrix::identity(g.size());
    auto b = impose_bc(m, BcSpec::dirichlet(), g);
    for (int j = 0; j < g.size(); ++j) {
        CHECK(b(0, j) == ((j == 0) ? cplx(1.0) : cplx(0.0)));
        CHECK(b(12, j) == ((j == 12) ? cplx(1.0) : cplx(0.0)));
    }

    // interior rows preserved bit-for-bit on a dense operator
    ComplexMatrix lap = g.d(2);
    lap *= cplx(-1.0);
    auto bl = impose_bc(lap, BcSpec::dirichlet2(), g);
    for (int i = 2; i <= 10; ++i)
        for (int j = 0; j < g.size(); ++j) CHECK(bl(i, j) == lap(i, j));
}

TEST_CASE("impose_bc: Dirichlet Laplacian leading eigenvalue pi^2/4") {
    auto g = build_grid(32);
    ComplexMatrix lap = g.d(2);
    lap *= cplx(-1.0);
    auto bc = BcSpec::dirichlet();
    auto b0 = impose_bc(lap, bc, g);
    auto b1 = zero_bc_rows(ComplexMatrix::identity(g.size()), bc, g);
    auto eig = pencil_eigenvalues(b0, b1, 2);
    // sorted by real part; the leading one approximates pi^2/4
    const double pi24 = std::numbers::pi * std::numbers::pi / 4.0;
    CHECK(std::abs(eig.front() - cplx(pi24)) < 1e-8);
}

TEST_CASE("impose_bc: Neumann realization has second eigenvalue pi^2/4") {
    auto g = build_grid(32);
    const int n = g.n;
    ComplexMatrix lap = g.d(2);
    lap *= cplx(-1.0);
    // derivative-evaluation functionals at the walls as constraint rows
    std::vector<cplx> top(g.size()), bottom(g.size());
    for (int j = 0; j <= n; ++j) {
        top[j] = g.d(1)(0, j);
        bottom[j] = g.d(1)(n, j);
    }
    auto bc = BcSpec::constrained({top, bottom});
    auto b0 = impose_bc(lap, bc, g);
    auto b1 = zero_bc_rows(ComplexMatrix::identity(g.size()), bc, g);
    auto eig = pencil_eigenvalues(b0, b1, 2);
    const double pi24 = std::numbers::pi * std::numbers::pi / 4.0;
    CHECK(std::abs(eig[0]) < 1e-8);  // constant mode; the <1,u>=0 constraint removes it
    CHECK(std::abs(eig[1] - cplx(pi24)) < 1e-8);
}

TEST_CASE("BcSpec: dependent constraint rows rejected") {
    std::vector<cplx> r1 = {1.0, 2.0, 3.0};
    std::vector<cplx> r2 = {2.0, 4.0, 6.0};
    CHECK_THROWS_AS(BcSpec::constrained({r1, r2}), std::invalid_argument);
}
