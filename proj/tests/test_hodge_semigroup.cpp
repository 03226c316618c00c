#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spectra/hodge.hpp"
#include "spectra/semigroup_lab.hpp"

using namespace spectra;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

PeriodicField random_field(double L, const SpectralGrid& g, unsigned seed, int max_mode = 2) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PeriodicField f(L);
    for (int n = -max_mode; n <= max_mode; ++n) {
        std::vector<cplx> u1(g.size()), u2(g.size());
        // smooth random profiles from a low-degree basis
        double c[6];
        for (auto& x : c) x = u(rng);
        for (int j = 0; j < g.size(); ++j) {
            const double x = g.nodes[j];
            u1[j] = cplx(c[0] + c[1] * x + c[2] * x * x, u(rng) * 0.0) +
                    cplx(0.0, c[3] * x * x * x);
            u2[j] = cplx(c[4] * (1 - x * x), c[5] * x * (1 - x * x));
        }
        f.modes[n] = {u1, u2};
    }
    return f;
}

// divergence-free zero-flux field from stream functions psi(n, .) vanishing at walls
PeriodicField random_divfree_field(double L, const SpectralGrid& g, unsigned seed,
                                   int max_mode = 2) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PeriodicField f(L);
    for (int n = -max_mode; n <= max_mode; ++n) {
        std::vector<cplx> psi(g.size());
        const cplx c1(u(rng), u(rng)), c2(u(rng), u(rng));
        for (int j = 0; j < g.size(); ++j) {
            const double x = g.nodes[j];
            const double w = (1 - x * x) * (1 - x * x);
            psi[j] = w * (c1 + c2 * x);
        }
        auto u1 = g.d(1).apply(psi);
        std::vector<cplx> u2(g.size());
        const double a = f.alpha(n);
        for (int j = 0; j < g.size(); ++j) u2[j] = -kI * a * psi[j];
        f.modes[n] = {u1, u2};
    }
    return f;
}

}  // namespace

TEST_CASE("project_pi: annihilates oscillating modes, idempotent, keeps div-free form") {
    auto g = build_grid(48);
    auto f = random_field(6.0, g, 1);
    f.modes.erase(0);
    auto p = project_pi(f);
    CHECK(field_norm(p, g) < 1e-14);

    auto full = random_field(6.0, g, 2);
    auto p1 = project_pi(full);
    auto p2 = project_pi(p1);
    CHECK(field_norm(field_add(p1, p2, -1.0), g) < 1e-14);

    auto df = random_divfree_field(6.0, g, 3);
    auto pdf = project_pi(df);
    // divergence-free input: the averaged u2 vanishes
    REQUIRE(pdf.modes.count(0) == 1);
    for (const auto& v : pdf.modes[0].second) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("project_p: kernel, fixed points, orthogonality") {
    auto g = build_grid(48);
    // gradient field grad(x2^2) = (0, 2 x2) is curl-free
    PeriodicField grad(6.0);
    std::vector<cplx> z(g.size(), cplx(0.0)), du(g.size());
    for (int j = 0; j < g.size(); ++j) du[j] = 2.0 * g.nodes[j];
    grad.modes[0] = {z, du};
    auto pg = project_p(grad, g);
    CHECK(field_norm(pg, g) < 1e-10);

    auto df = random_divfree_field(6.0, g, 4);
    auto pdf = project_p(df, g);
    CHECK(field_norm(field_add(df, pdf, -1.0), g) < 1e-10 * std::max(1.0, field_norm(df, g)));

    auto f = random_field(6.0, g, 5);
    auto pf = project_p(f, g);
    auto residual = field_add(f, pf, -1.0);
    CHECK(std::abs(field_inner(pf, residual, g)) < 1e-10 * field_norm(f, g) * field_norm(f, g));
}

TEST_CASE("hodge_decompose: constants, constructed members, random reconstruction") {
    auto g = build_grid(48);
    // u = (1, 0): pure constant part with A = 1
    PeriodicField ones(6.0);
    std::vector<cplx> one(g.size(), cplx(1.0)), zero(g.size(), cplx(0.0));
    ones.modes[0] = {one, zero};
    auto parts = hodge_decompose(ones, g);
    CHECK(parts.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(field_norm(parts.div_part, g) < 1e-10);

    // u = grad-perp of a wall-vanishing stream function: pure div part
    auto df = random_divfree_field(6.0, g, 6);
    auto parts2 = hodge_decompose(df, g);
    CHECK(field_norm(parts2.curl_part, g) < 1e-9 * std::max(1.0, field_norm(df, g)));

    for (unsigned seed = 10; seed < 14; ++seed) {
        auto f = random_field(6.0, g, seed);
        auto hp = hodge_decompose(f, g);
        PeriodicField rec = field_add(hp.curl_part, hp.div_part);
        auto& m0 = rec.modes[0];
        if (m0.first.empty()) m0 = {std::vector<cplx>(g.size(), cplx(0.0)),
                                    std::vector<cplx>(g.size(), cplx(0.0))};
        for (auto& v : m0.first) v += hp.constant;
        const double scale = std::max(1.0, field_norm(f, g));
        CHECK(field_norm(field_add(f, rec, -1.0), g) < 1e-9 * scale);
        CHECK(std::abs(field_inner(hp.curl_part, hp.div_part, g)) < 1e-9 * scale * scale);
    }
}

TEST_CASE("recover_pressure: polynomial, constant, and random curl-free data") {
    auto g = build_grid(48);
    // G = grad(x2^3)
    PeriodicField grad(6.0);
    std::vector<cplx> zero(g.size(), cplx(0.0)), g2(g.size());
    for (int j = 0; j < g.size(); ++j) g2[j] = 3.0 * g.nodes[j] * g.nodes[j];
    grad.modes[0] = {zero, g2};
    auto q = recover_pressure(grad, g);
    CHECK(q.linear_coeff == doctest::Approx(0.0));
    // q = x2^3 - mean; mean of x^3 is 0
    for (int j = 0; j < g.size(); ++j)
        CHECK(std::abs(q.modes[0][j] - cplx(std::pow(g.nodes[j], 3))) < 1e-10);

    // G = (c, 0): affine pressure
    PeriodicField cfield(6.0);
    std::vector<cplx> cvec(g.size(), cplx(0.7));
    cfield.modes[0] = {cvec, zero};
    auto qc = recover_pressure(cfield, g);
    CHECK(qc.linear_coeff == doctest::Approx(0.7));
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(qc.modes[0][j]) < 1e-12);

    // random curl-free field: gradient of a random scalar
    ScalarField s;
    s.period = 6.0;
    s.linear_coeff = -0.3;
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = -2; n <= 2; ++n) {
        std::vector<cplx> qn(g.size());
        const cplx c1(u(rng), u(rng)), c2(u(rng), u(rng));
        for (int j = 0; j < g.size(); ++j) {
            const double x = g.nodes[j];
            qn[j] = c1 * x + c2 * x * x;
        }
        s.modes[n] = qn;
    }
    auto gf = scalar_gradient(s, g);
    auto qr = recover_pressure(gf, g);
    auto back = scalar_gradient(qr, g);
    CHECK(field_norm(field_add(gf, back, -1.0), g) < 1e-9 * std::max(1.0, field_norm(gf, g)));

    // divergence-free input rejected
    auto df = random_divfree_field(6.0, g, 9);
    CHECK_THROWS_AS((void)recover_pressure(df, g), std::invalid_argument);
}

TEST_CASE("Pi and P commute on random fields") {
    auto g = build_grid(48);
    for (unsigned seed = 30; seed < 40; ++seed) {
        auto f = random_field(6.0, g, seed);
        auto a = project_pi(project_p(f, g));
        auto b = project_p(project_pi(f), g);
        const double scale = std::max(1.0, field_norm(f, g));
        CHECK(field_norm(field_add(a, b, -1.0), g) < 1e-10 * scale);
    }
}

TEST_CASE("mode_generator: eigenvalues match the OS pencil") {
    auto g = build_grid(96);
    auto flow = make_flow("couette", g);
    auto gen = mode_generator(1, 1e-2, 6.0, flow, g, OsBc::S);
    auto rates = generator_decay_rates(gen);  // Lambda set
    auto pencil = orr_sommerfeld_pencil(gen.alpha, gen.beta, flow, g, OsBc::S);
    auto betalam = os_spectrum(pencil, g);
    // compare the leading few Lambda-hat = beta lambda + alpha^2
    std::vector<cplx> from_pencil;
    for (const auto& bl : betalam)
        from_pencil.push_back(bl + gen.alpha * gen.alpha);
    std::sort(from_pencil.begin(), from_pencil.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    std::vector<cplx> from_gen;
    for (const auto& lam : rates) from_gen.push_back(lam / gen.epsilon);
    // multiset comparison: conjugate pairs with equal real parts defeat a
    // positional sort
    for (int k = 0; k < 10; ++k) {
        double best = 1e300;
        for (const auto& z : from_gen) best = std::min(best, std::abs(z - from_pencil[k]));
        CHECK(best < 1e-8 * std::max(1.0, std::abs(from_pencil[k])));
    }
}

TEST_CASE("mode_generator: U = 0 gives real positive decay rates") {
    auto g = build_grid(64);
    auto zero = make_flow("zero", g);
    auto gen = mode_generator(1, 1e-2, 6.0, zero, g, OsBc::S);
    auto rates = generator_decay_rates(gen);
    std::sort(rates.begin(), rates.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    for (size_t k = 0; k < rates.size() / 2; ++k) {
        CHECK(rates[k].real() > 0.0);
        CHECK(std::abs(rates[k].imag()) < 1e-7 * std::max(1.0, rates[k].real()));
    }
}

TEST_CASE("mode_generator: alpha-dependence only through 2 pi n / L") {
    auto g = build_grid(64);
    auto flow = make_flow("couette", g);
    auto g1 = mode_generator(1, 1e-2, 6.0, flow, g, OsBc::D);
    auto g2 = mode_generator(2, 1e-2, 12.0, flow, g, OsBc::D);
    CHECK(g1.alpha == doctest::Approx(g2.alpha));
    auto r1 = generator_decay_rates(g1);
    auto r2 = generator_decay_rates(g2);
    for (size_t k = 0; k < 5; ++k)
        CHECK(std::abs(r1[k] - r2[k]) < 1e-9 * std::max(1.0, std::abs(r1[k])));
}

TEST_CASE("semigroup_norm_curve: identity at t = 0 and the a-priori bound") {
    auto g = build_grid(96);
    auto flow = make_flow("couette", g);
    auto gen = mode_generator(1, 1e-3, 6.0, flow, g, OsBc::S);
    auto ts = default_t_grid(1e-3, 2.0 * kPi / (6.0 * 1e-3), 12);
    auto curve = semigroup_norm_curve(gen, ts);
    std::vector<double> t0 = {0.0};
    CHECK(semigroup_norm_curve(gen, t0)[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (size_t j = 0; j < ts.size(); ++j)
        CHECK(curve[j] <= std::exp(0.5 * flow.sup_du * ts[j]) + 1e-8);
}

TEST_CASE("semigroup decay slope approaches the spectral gap") {
    auto g = build_grid(96);
    auto flow = make_flow("couette", g);
    auto gen = mode_generator(1, 1e-3, 6.0, flow, g, OsBc::S);
    auto rates = generator_decay_rates(gen);
    double gap = 1e300;
    for (const auto& r : rates) gap = std::min(gap, r.real());
    const double beta1 = 2.0 * kPi / (6.0 * 1e-3);
    const double tref = 10.0 / (1e-3 * std::pow(beta1, 2.0 / 3.0));
    std::vector<double> ts = {tref, 1.3 * tref};
    auto curve = semigroup_norm_curve(gen, ts);
    const double slope = std::log(curve[1] / curve[0]) / (ts[1] - ts[0]);
    CHECK(slope < 0.0);
    // asymptotic slope cannot beat the spectral gap, and the gap scales like
    // eps * beta1^{2/3}
    CHECK(slope >= -1.30 * gap);
    CHECK(slope <= -0.25 * 1e-3 * std::pow(beta1, 2.0 / 3.0));
}

TEST_CASE("pi_decay_rate: eps pi^2/4 for both wall conditions, linear in eps") {
    const double pi24 = kPi * kPi / 4.0;
    CHECK(std::abs(pi_decay_rate(1e-3, OsBc::D) - 1e-3 * pi24) < 1e-8);
    CHECK(std::abs(pi_decay_rate(1e-3, OsBc::S) - 1e-3 * pi24) < 1e-8);
    CHECK(pi_decay_rate(2e-3, OsBc::D) == doctest::Approx(2.0 * pi_decay_rate(1e-3, OsBc::D)));
}

TEST_CASE("gearhart_pruss_envelope: limits and domination of the measured curve") {
    // r -> infinity limit: M e^{-w t}
    CHECK(gearhart_pruss_envelope(1.5, -1.0, 0.3, 1e12, 2.0) ==
          doctest::Approx(1.5 * std::exp(-0.6)).epsilon(1e-9));
    CHECK_THROWS_AS(gearhart_pruss_envelope(1.0, 0.5, 0.3, 1.0, 0.0), std::invalid_argument);
    // doubling M doubles the coefficient in the r-dominated regime (linear in
    // M^2 overall)
    const double e1 = gearhart_pruss_envelope(1.0, -1.0, 0.5, 1e-6, 0.0);
    const double e2 = gearhart_pruss_envelope(2.0, -1.0, 0.5, 1e-6, 0.0);
    CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(1e-3));

    auto g = build_grid(96);
    auto flow = make_flow("couette", g);
    auto gen = mode_generator(1, 1e-3, 6.0, flow, g, OsBc::S);
    const double beta1 = 2.0 * kPi / (6.0 * 1e-3);
    const double omega = 1e-3 * 0.3 * std::pow(beta1, 2.0 / 3.0);
    const double r = measured_r_omega(gen, omega);
    REQUIRE(r > 0.0);
    auto ts = default_t_grid(1e-3, beta1, 10);
    auto curve = semigroup_norm_curve(gen, ts);
    for (size_t j = 0; j < ts.size(); ++j)
        CHECK(curve[j] <= gearhart_pruss_envelope(1.0, -0.5 * flow.sup_du, omega, r, ts[j]));
}

TEST_CASE("theorem_rate_check: Couette passes, absurd rate fails, wrong class refused") {
    auto g = build_grid(96);
    auto flow = make_flow("couette", g);
    const double upsilon_ok = 0.5 * 1.1690;
    auto rep = theorem_rate_check(flow, 1e-3, 6.0, OsBc::S, upsilon_ok, 2, g);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.sup_weighted));

    // an Upsilon above the slowest decay must fail
    auto gen = mode_generator(1, 1e-3, 6.0, flow, g, OsBc::S);
    auto rates = generator_decay_rates(gen);
    double gap = 1e300;
    for (const auto& r : rates) gap = std::min(gap, r.real());
    const double beta1 = 2.0 * kPi / (6.0 * 1e-3);
    const double upsilon_bad = 3.0 * gap / (1e-3 * std::pow(beta1, 2.0 / 3.0));
    auto bad = theorem_rate_check(flow, 1e-3, 6.0, OsBc::S, upsilon_bad, 1, g);
    CHECK_FALSE(bad.pass);

    auto pois = make_flow("poiseuille", g);
    CHECK_THROWS_AS((void)theorem_rate_check(pois, 1e-3, 6.0, OsBc::S, 0.3, 1, g),
                    std::invalid_argument);
}
