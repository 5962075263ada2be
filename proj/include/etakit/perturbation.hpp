#pragma once

#include "etakit/metric.hpp"
#include "etakit/polynomial.hpp"

namespace etakit {

/// ‖AB − BA‖_F / max(1, ‖A‖_F·‖B‖_F)
double commutator_defect(const ComplexMatrix& a, const ComplexMatrix& b);

/// f(K) = Σ c_j K^j by Horner's rule, with K⁰ = I.
ComplexMatrix matrix_poly(const ComplexMatrix& k, const RealPolynomial& f);

struct PerturbedHamiltonian {
    ComplexMatrix hamiltonian;
    ComplexMatrix k;
    RealPolynomial f;
    ComplexMatrix perturbed;   // H + f(K)
    ComplexMatrix eta;
    double residual = 0.0;     // residual(perturbed, eta)
    double commutator_defect = 0.0;
};

struct PerturbOptions {
    double tol = kDefaultTol;
    bool allow_hermitian = false;
};

/// H̃ = H + f(K) for Hermitian K commuting with η.
///
/// Every hypothesis is verified and reported by name through
/// PreconditionError: "eta Hermitian", "eta invertible", "eta intertwines H",
/// "K Hermitian", "K commutes with eta", "H non-Hermitian". The outcome is
/// checked too ("perturbed residual", "perturbed non-Hermitian").
PerturbedHamiltonian perturb(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta,
                             const ComplexMatrix& k, const RealPolynomial& f,
                             const PerturbOptions& opts = {});

/// K = f(η); satisfies both hypotheses of `perturb` for any real f.
ComplexMatrix auto_K(const ComplexMatrix& eta, const RealPolynomial& f, double tol = kDefaultTol);

}  // namespace etakit
