#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spectra/halfline_operator.hpp"
#include "spectra/operator_assembly.hpp"

using namespace spectra;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("mu0(0) equals theta1r: two independent zero finders agree") {
    auto r = mu0(0.0);
    REQUIRE(r.found);
    CHECK(std::abs(r.point.mu - special_constants().theta1r) < 1e-8);
    CHECK(std::abs(f_laplace(r.point.lambda, 0.0)) < 1e-9);
}

TEST_CASE("mu0(10) approaches Re nu1") {
    auto r = mu0(10.0);
    REQUIRE(r.found);
    CHECK(std::abs(r.point.mu - special_constants().nu1.real()) <= 0.1);
}

TEST_CASE("lower bound mu0 + min(theta^2, theta^-2)/2 >= 0") {
    for (double theta : {0.25, 1.0, 4.0}) {
        auto r = mu0(theta);
        REQUIRE(r.found);
        CHECK(r.point.mu + 0.5 * std::min(theta * theta, 1.0 / (theta * theta)) >= -1e-8);
    }
}

TEST_CASE("branch_trace: residual, endpoint, and monotone certificate") {
    auto r0 = mu0(0.0);
    REQUIRE(r0.found);
    auto trace = branch_trace(r0.point, 1.0, 20);
    REQUIRE(trace.size() == 21);
    for (const auto& p : trace) CHECK(std::abs(f_laplace(p.lambda, p.theta)) < 1e-9);

    auto r1 = mu0(1.0);
    REQUIRE(r1.found);
    if (std::abs(trace.back().lambda - r1.point.lambda) < 0.3)  // branch stayed leftmost
        CHECK(std::abs(trace.back().lambda - r1.point.lambda) < 1e-7);

    // (mu + theta^2/2) never falls below its start value times exp(-int w)
    const double start = trace.front().mu;
    double integral = 0.0;
    double prev_w = branch_weight(trace.front());
    for (size_t i = 1; i < trace.size(); ++i) {
        const double w = branch_weight(trace[i]);
        integral += 0.5 * (w + prev_w) * (trace[i].theta - trace[i - 1].theta);
        prev_w = w;
        const double lhs = trace[i].mu + 0.5 * trace[i].theta * trace[i].theta;
        CHECK(lhs >= 0.95 * start * std::exp(-integral));
    }
}

TEST_CASE("hat_mu_m is positive") {
    const double v = hat_mu_m();
    MESSAGE("hat_mu_m = ", v);
    CHECK(v > 0.0);
    // it cannot exceed the theta = 0 branch start
    CHECK(v <= special_constants().theta1r + 1e-9);
}

TEST_CASE("hat_mu_0 collapses for equal wall shears and splits otherwise") {
    auto r1 = mu0(1.0);
    REQUIRE(r1.found);
    CHECK(std::abs(hat_mu_0(1.0, 1.0, 1.0) - r1.point.mu) < 1e-9);

    auto rhalf = mu0(0.5);
    REQUIRE(rhalf.found);
    const double expect = std::min(r1.point.mu, 4.0 * rhalf.point.mu);
    CHECK(std::abs(hat_mu_0(1.0, 1.0, 8.0) - expect) < 1e-7);
}

TEST_CASE("delta(0) = 0 and pole proximity guarded") {
    CHECK(std::abs(delta_alpha(0.0)) < 1e-12);
    const double w1 = -real_airy_zeros(1)[0];
    CHECK_THROWS_AS(delta_alpha(w1), std::invalid_argument);
}

TEST_CASE("delta has exactly one sign change per Airy-zero interval") {
    auto omegas = real_airy_zeros(6);
    for (int k = 0; k < 5; ++k) {
        const double a = -omegas[k], b = -omegas[k + 1];
        int changes = 0;
        double prev = delta_alpha(a + 5e-4);
        for (double t = a + 5e-4 + 1e-3; t < b - 5e-4; t += 1e-3) {
            const double cur = delta_alpha(t);
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
    }
}

TEST_CASE("interlaced_roots: strict brackets") {
    auto omegas = real_airy_zeros(6);
    auto roots = interlaced_roots(5);
    REQUIRE(roots.size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(roots[k] > -omegas[k]);
        CHECK(roots[k] < -omegas[k + 1]);
        CHECK(std::abs(delta_alpha(roots[k])) < 1e-8);
    }
}

TEST_CASE("l_theta_spectrum: leftmost eigenvalue matches the F-zero method") {
    auto spec = l_theta_spectrum(1.0, 40.0, 128);
    REQUIRE_FALSE(spec.values.empty());
    CHECK_FALSE(spec.under_resolved);
    cplx lead = spec.values.front();
    for (const auto& z : spec.values)
        if (z.real() < lead.real()) lead = z;
    auto r = mu0(1.0);
    REQUIRE(r.found);
    CHECK(std::abs(lead - r.point.lambda) < 1e-4);
}

TEST_CASE("l_theta_spectrum: large theta approaches nu1") {
    auto spec = l_theta_spectrum(20.0, 40.0, 128, false);
    REQUIRE_FALSE(spec.values.empty());
    cplx lead = spec.values.front();
    for (const auto& z : spec.values)
        if (z.real() < lead.real()) lead = z;
    CHECK(std::abs(lead - special_constants().nu1) < 0.05);
}

TEST_CASE("l_theta Dirichlet variant: rotated Airy zeros") {
    auto vals = l_theta_dirichlet_spectrum(40.0, 128);
    auto omegas = real_airy_zeros(3);
    for (int k = 0; k < 3; ++k) {
        const cplx target = std::polar(-omegas[k], kPi / 3.0);
        double best = 1e300;
        for (const auto& z : vals) best = std::min(best, std::abs(z - target));
        CHECK(best < 1e-5);
    }
}

TEST_CASE("cross-method agreement on the common window") {
    for (double theta : {0.5, 2.0}) {
        auto spec = l_theta_spectrum(theta, 40.0, 128, false);
        auto r = mu0(theta);
        REQUIRE(r.found);
        // every F-zero in the window corresponds to a matrix eigenvalue
        for (const auto& z : r.all_zeros) {
            if (std::abs(z.imag()) > 6.0) continue;
            double best = 1e300;
            for (const auto& w : spec.values) best = std::min(best, std::abs(w - z));
            CHECK(best < 1e-4);
        }
    }
}

TEST_CASE("constrained Schrodinger resolvent scaling, large-alpha regime") {
    auto g = build_grid(128);
    auto flow = make_flow("couette", g);
    const double theta = 1.0;
    const double mu_hat = hat_mu_0(theta, 1.0, 1.0);
    std::vector<double> cs;
    for (double beta : {1e4, 4e4}) {
        const double alpha = theta * std::cbrt(beta);
        const double re = (mu_hat - 0.2) * std::pow(beta, -1.0 / 3.0);
        const auto bc = constrained_bc(alpha, g);
        double sup = 0.0;
        for (double nu = -3.0; nu <= 3.0; nu += 0.5) {
            ComplexMatrix raw = g.d(2);
            raw *= cplx(-1.0);
            for (int j = 0; j < g.size(); ++j)
                raw(j, j) += kI * beta * flow.u[j] - beta * cplx(re, nu);
            auto m = impose_bc(raw, bc, g);
            sup = std::max(sup, interior_resolvent_norm(m, bc, g));
        }
        cs.push_back(sup * std::pow(beta, 2.0 / 3.0));
    }
    CHECK(cs[1] < 3.0 * cs[0]);
    CHECK(cs[0] < 3.0 * cs[1]);
}
