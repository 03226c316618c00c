#include "spectra/semigroup_lab.hpp"

#include <cmath>
#include <numbers>

namespace spectra {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

struct Reduction {
    std::vector<int> interior;  // nodes kept
    std::vector<int> boundary;  // the four eliminated nodes
    ComplexMatrix embed;        // full = embed * reduced
};

Reduction boundary_elimination(const BcSpec& bc, const SpectralGrid& grid) {
    Reduction red;
    const int sz = grid.size();
    std::vector<bool> is_bc(sz, false);
    for (int r : bc.bordered_rows(grid.n)) is_bc[r] = true;
    for (int j = 0; j < sz; ++j) (is_bc[j] ? red.boundary : red.interior).push_back(j);
    const int nb = int(red.boundary.size());
    const int ni = int(red.interior.size());
    // boundary-condition rows as functionals
    ComplexMatrix rows(nb, sz);
    {
        ComplexMatrix probe = ComplexMatrix(sz, sz);  // zero: impose writes the bc rows
        ComplexMatrix bordered = impose_bc(probe, bc, grid);
        for (int r = 0; r < nb; ++r)
            for (int j = 0; j < sz; ++j) rows(r, j) = bordered(red.boundary[r], j);
    }
    ComplexMatrix cb(nb, nb), ci(nb, ni);
    for (int r = 0; r < nb; ++r) {
        for (int c = 0; c < nb; ++c) cb(r, c) = rows(r, red.boundary[c]);
        for (int c = 0; c < ni; ++c) ci(r, c) = rows(r, red.interior[c]);
    }
    // u_b = -cb^{-1} ci u_i
    auto f = lu_factor(std::move(cb));
    ComplexMatrix s(nb, ni);
    std::vector<cplx> col(nb);
    for (int c = 0; c < ni; ++c) {
        for (int r = 0; r < nb; ++r) col[r] = ci(r, c);
        auto x = lu_solve(f, col);
        for (int r = 0; r < nb; ++r) s(r, c) = -x[r];
    }
    red.embed = ComplexMatrix(sz, ni);
    for (int c = 0; c < ni; ++c) red.embed(red.interior[c], c) = 1.0;
    for (int r = 0; r < nb; ++r)
        for (int c = 0; c < ni; ++c) red.embed(red.boundary[r], c) = s(r, c);
    return red;
}

}  // namespace

ModeGenerator mode_generator(int n, double epsilon, double period, const BaseFlow& flow,
                             const SpectralGrid& grid, OsBc bc) {
    if (n == 0) throw std::invalid_argument("mode_generator: n must be nonzero");
    if (epsilon <= 0.0 || period <= 0.0)
        throw std::invalid_argument("mode_generator: need epsilon > 0 and L > 0");
    ModeGenerator gen;
    gen.mode = n;
    gen.period = period;
    gen.epsilon = epsilon;
    gen.alpha = 2.0 * kPi * n / period;
    gen.beta = gen.alpha / epsilon;
    gen.bc = bc;
    const int sz = grid.size();
    const double a2 = gen.alpha * gen.alpha;

    // Weak-form assembly on the boundary-condition subspace.  The velocity
    // energy identity Re<u, Tu> = eps ||grad u||^2 + Re<u1, U' u2> transfers
    // exactly to the discrete quadratic forms (quadrature exact on the
    // polynomial space), so the semigroup inherits the growth bound
    // e^{||U'|| t/2}; a collocation assembly does not.
    const BcSpec spec = os_bcspec(bc);
    Reduction red = boundary_elimination(spec, grid);
    const int ni = int(red.interior.size());

    auto fine = build_grid(2 * grid.n + 4);
    const int fsz = fine.size();
    ComplexMatrix interp(fsz, sz);
    {
        std::vector<double> w(sz);
        for (int j = 0; j < sz; ++j)
            w[j] = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == grid.n) ? 0.5 : 1.0);
        for (int i = 0; i < fsz; ++i) {
            const double y = fine.nodes[i];
            int hit = -1;
            for (int j = 0; j < sz; ++j)
                if (y == grid.nodes[j]) hit = j;
            if (hit >= 0) {
                interp(i, hit) = 1.0;
                continue;
            }
            double denom = 0.0;
            for (int j = 0; j < sz; ++j) denom += w[j] / (y - grid.nodes[j]);
            for (int j = 0; j < sz; ++j) interp(i, j) = (w[j] / (y - grid.nodes[j])) / denom;
        }
    }
    // basis values and derivatives of the constrained nodal basis on the fine grid
    ComplexMatrix v0 = interp * red.embed;                 // psi
    ComplexMatrix v1 = interp * (grid.d(1) * red.embed);   // psi'
    ComplexMatrix v2 = interp * (grid.d(2) * red.embed);   // psi''
    // flow samples on the fine grid
    std::vector<cplx> uc(sz), duc(sz);
    for (int j = 0; j < sz; ++j) {
        uc[j] = flow.u[j];
        duc[j] = flow.du[j];
    }
    auto uf = interp.apply(uc);
    auto duf = interp.apply(duc);

    ComplexMatrix qmat(ni, ni), tmat(ni, ni);
    for (int r = 0; r < ni; ++r)
        for (int c = 0; c < ni; ++c) {
            cplx q = 0.0, t = 0.0;
            for (int j = 0; j < fsz; ++j) {
                const double wj = fine.weights[j];
                const cplx p0 = std::conj(v0(j, r)) * v0(j, c);
                const cplx p1 = std::conj(v1(j, r)) * v1(j, c);
                const cplx p2 = std::conj(v2(j, r)) * v2(j, c);
                q += wj * (p1 + a2 * p0);
                t += wj * (epsilon * (p2 + 2.0 * a2 * p1 + a2 * a2 * p0) +
                           kI * gen.alpha * uf[j] * (p1 + a2 * p0) -
                           kI * gen.alpha * duf[j] * std::conj(v1(j, r)) * v0(j, c));
            }
            qmat(r, c) = q;
            tmat(r, c) = t;
        }
    // G = -Q^{-1} T: Q psi_t = -T(., psi)
    {
        auto fq = lu_factor(qmat);
        ComplexMatrix g(ni, ni);
        std::vector<cplx> col(ni);
        for (int c = 0; c < ni; ++c) {
            for (int r = 0; r < ni; ++r) col[r] = -tmat(r, c);
            auto x = lu_solve(fq, col);
            for (int r = 0; r < ni; ++r) g(r, c) = x[r];
        }
        gen.g = std::move(g);
    }
    // hermitian-ize roundoff before the Cholesky
    for (int r = 0; r < ni; ++r)
        for (int c = r; c < ni; ++c) {
            const cplx avg = 0.5 * (qmat(r, c) + std::conj(qmat(c, r)));
            qmat(r, c) = avg;
            qmat(c, r) = std::conj(avg);
        }
    gen.q = GramMetric::from_matrix(qmat);
    return gen;
}

std::vector<cplx> generator_decay_rates(const ModeGenerator& gen) {
    ComplexMatrix neg = gen.g;
    neg *= cplx(-1.0);
    auto eig = eigenvalues(neg);
    return eig.values;
}

std::vector<double> semigroup_norm_curve(const ModeGenerator& gen, std::span<const double> ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(expm_norm(gen.g, t, gen.q));
    return out;
}

double pi_decay_rate(double epsilon, OsBc bc) {
    auto grid = build_grid(64);
    ComplexMatrix lap = grid.d(2);
    lap *= cplx(-1.0);
    if (bc == OsBc::D) {
        auto spec = BcSpec::dirichlet();
        auto b0 = impose_bc(lap, spec, grid);
        auto b1 = zero_bc_rows(ComplexMatrix::identity(grid.size()), spec, grid);
        auto eig = pencil_eigenvalues(b0, b1, 2, cplx(0.4, 0.3));
        return epsilon * eig.front().real();
    }
    // traction: Neumann walls; the zero-flux constraint removes the constant
    std::vector<cplx> top(grid.size()), bottom(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        top[j] = grid.d(1)(0, j);
        bottom[j] = grid.d(1)(grid.n, j);
    }
    auto spec = BcSpec::constrained({top, bottom});
    auto b0 = impose_bc(lap, spec, grid);
    auto b1 = zero_bc_rows(ComplexMatrix::identity(grid.size()), spec, grid);
    auto eig = pencil_eigenvalues(b0, b1, 2, cplx(0.4, 0.3));
    return epsilon * eig[1].real();  // second Neumann eigenvalue
}

double gearhart_pruss_envelope(double m_hat, double omega_hat, double omega, double r_omega,
                               double t) {
    if (!(omega > omega_hat) || !(r_omega > 0.0) || m_hat < 1.0)
        throw std::invalid_argument("gearhart_pruss_envelope: parameter domain violated");
    return m_hat * (1.0 + 2.0 * m_hat * (omega - omega_hat) / r_omega) * std::exp(-omega * t);
}

double measured_r_omega(const ModeGenerator& gen, double omega, int im_samples) {
    const int ni = gen.g.rows();
    ComplexMatrix a = gen.g;
    a *= cplx(-1.0);
    auto eig = eigenvalues(a);
    // sample the vertical line at the spectral imaginary parts plus a grid
    std::vector<double> ys;
    double ymin = -1.0, ymax = 1.0;
    for (const auto& z : eig.values) {
        ys.push_back(z.imag());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    const double pad = 0.2 * (ymax - ymin) + 1.0;
    for (int j = 0; j < im_samples; ++j)
        ys.push_back(ymin - pad + (ymax - ymin + 2.0 * pad) * j / (im_samples - 1));
    double sup = 0.0;
    for (double y : ys) {
        ComplexMatrix shifted = a;
        for (int i = 0; i < ni; ++i) shifted(i, i) -= cplx(omega, y);
        // ||(A - z)^{-1}||_Q via the weighted smallest singular value
        try {
            const double smin = smallest_singular_value(shifted, gen.q, gen.q);
            sup = std::max(sup, 1.0 / smin);
        } catch (const NumericallySingularError&) {
            return 0.0;  // line touches the spectrum
        }
    }
    return sup > 0.0 ? 1.0 / sup : 0.0;
}

std::vector<double> default_t_grid(double epsilon, double beta1, int count) {
    const double scale = epsilon * std::pow(beta1, 2.0 / 3.0);
    const double t0 = 1e-2 / scale, t1 = 20.0 / scale;
    std::vector<double> ts(count);
    for (int j = 0; j < count; ++j)
        ts[j] = t0 * std::pow(t1 / t0, double(j) / (count - 1));
    return ts;
}

RateCheckReport theorem_rate_check(const BaseFlow& flow, double epsilon, double period, OsBc bc,
                                   double upsilon, int n_modes, const SpectralGrid& grid) {
    const bool part1 = flow.convexity_condition();
    const bool part2 = flow.in_assumption_class && flow.delta2 <= 0.25;
    if (!part1 && !part2)
        throw std::invalid_argument(
            "theorem_rate_check: flow outside both hypothesis classes "
            "(need inf|U''| > 0 or small delta_2 with inf|U'| > 0)");
    RateCheckReport rep;
    rep.upsilon = upsilon;
    rep.epsilon = epsilon;
    rep.period = period;
    rep.beta1 = 2.0 * kPi / (period * epsilon);
    rep.ts = default_t_grid(epsilon, rep.beta1);
    const double rate = epsilon * upsilon * std::pow(rep.beta1, 2.0 / 3.0);
    bool pass = true;
    double sup = 0.0;
    for (int n = 1; n <= n_modes; ++n) {
        auto gen = mode_generator(n, epsilon, period, flow, grid, bc);
        ModeCurve curve;
        curve.mode = n;
        curve.norms = semigroup_norm_curve(gen, rep.ts);
        for (size_t j = 0; j < rep.ts.size(); ++j)
            curve.weighted.push_back(std::exp(rate * rep.ts[j]) * curve.norms[j]);
        for (double w : curve.weighted) sup = std::max(sup, w);
        // bounded = the weighted tail is not growing
        const size_t tail = rep.ts.size() * 4 / 5;
        if (curve.weighted.back() > 1.02 * curve.weighted[tail]) pass = false;
        rep.curves.push_back(std::move(curve));
    }
    rep.sup_weighted = sup;
    rep.pass = pass && std::isfinite(sup);
    return rep;
}

}  // namespace spectra
