#pragma once

#include "spectra/base_flow.hpp"
#include "spectra/dense_solvers.hpp"

namespace spectra {

enum class OsBc { S, D };  // traction (u = u'' = 0) vs no-slip (u = u' = 0)

inline BcSpec os_bcspec(OsBc bc) {
    return bc == OsBc::S ? BcSpec::dirichlet2() : BcSpec::dirichlet4();
}

/// B(lambda) = b0 - beta*lambda*b1 with lambda-independent boundary rows:
/// the four boundary rows live in b0 and are zero in b1.
struct OperatorPencil {
    ComplexMatrix b0, b1;
    BcSpec bc;
    double alpha = 0.0, beta = 0.0;
    std::string flow_kind;

    ComplexMatrix at(cplx lambda) const {
        ComplexMatrix b = b1;
        b *= -beta * lambda;
        b += b0;
        return b;
    }
};

/// -d^2/dx^2 + i beta U with Dirichlet rows.
ComplexMatrix schrodinger_dirichlet(double beta, const BaseFlow& flow, const SpectralGrid& grid);

/// Wall profiles z_± solving -z'' + a^2 z = 0, z(±1)=1, z(∓1)=0; the
/// normalized exponential form replaces sinh once it would overflow.
std::vector<double> constraint_profile(double alpha, bool plus_side, const SpectralGrid& grid);

/// -d^2/dx^2 + i beta U with the two quadrature rows <z_±, u> = 0.
ComplexMatrix schrodinger_constrained(double beta, const BaseFlow& flow, const SpectralGrid& grid,
                                      double alpha);
BcSpec constrained_bc(double alpha, const SpectralGrid& grid);

/// diag(U + i lambda) (-D2 + a^2) + diag(U''), Dirichlet rows.
ComplexMatrix rayleigh_matrix(cplx lambda, double alpha, const BaseFlow& flow,
                              const SpectralGrid& grid);

/// Direct bordered solve of the Rayleigh problem (kappa = 0) or the
/// kappa-regularized divergence-form solve through w = phi/(U - nu + i kappa).
std::vector<cplx> rayleigh_solve(cplx lambda, double alpha, const BaseFlow& flow,
                                 const SpectralGrid& grid, std::span<const cplx> v, double kappa);

struct EmbeddedSolve {
    std::vector<cplx> phi;              // at the smallest kappa
    std::vector<double> kappas;
    std::vector<double> h1_increments;  // ||phi_{k+1} - phi_k||_{1,2}
    bool stabilized = true;             // consecutive increment ratios < 0.5
};

/// kappa-schedule driver for lambda = i nu with nu in U([-1,1]).
EmbeddedSolve rayleigh_solve_embedded(double nu, double alpha, const BaseFlow& flow,
                                      const SpectralGrid& grid, std::span<const cplx> v,
                                      std::vector<double> kappas = {1e-2, 1e-3, 1e-4});

OperatorPencil orr_sommerfeld_pencil(double alpha, double beta, const BaseFlow& flow,
                                     const SpectralGrid& grid, OsBc bc);

/// Generalized spectrum of the pencil: the set {beta*lambda}.
std::vector<cplx> os_spectrum(const OperatorPencil& pencil, const SpectralGrid& grid,
                              cplx shift = cplx(0.0));

/// Smallest eigenvalue of the quadratic-form matrix of I(phi, lambda)
/// relative to ||phi||^2 on the Dirichlet subspace.
double gamma_m(cplx lambda, const BaseFlow& flow, const SpectralGrid& grid);

/// Operator norm of restrict∘M^{-1}∘embed in weighted L2 (interior data,
/// boundary rows enforced by the bordered matrix).  Throws
/// NumericallySingularError if M is (numerically) singular.
double interior_resolvent_norm(const ComplexMatrix& bordered, const BcSpec& bc,
                               const SpectralGrid& grid);

/// Same with the norm of d/dx ∘ M^{-1} as the second component.
std::pair<double, double> interior_resolvent_norms(const ComplexMatrix& bordered,
                                                   const BcSpec& bc, const SpectralGrid& grid);

}  // namespace spectra
