#pragma once

#include "etakit/metric.hpp"

namespace etakit {

/// Positive metric together with its principal square root and inverse root.
struct InducedForm {
    ComplexMatrix eta;
    ComplexMatrix sqrt_eta;
    ComplexMatrix inv_sqrt_eta;
};

/// Principal square root of a positive metric from a Hermitian
/// eigendecomposition of (η + η†)/2. Throws MetricNotPositiveError carrying
/// the offending minimum eigenvalue when η is not positive.
InducedForm metric_sqrt(const ComplexMatrix& eta, double tol = kDefaultTol);

/// H_η = η^{1/2} H η^{−1/2}; Hermitian and isospectral with H whenever η is a
/// positive metric for H.
ComplexMatrix induced_hamiltonian(const ComplexMatrix& hamiltonian, const InducedForm& form,
                                  double tol = kDefaultTol);

/// ⟨φ|ψ⟩_η = Σ conj(φ_i)(ηψ)_i. An indefinite η is rejected unless
/// `allow_indefinite` is set, in which case the value is only a Hermitian
/// sesquilinear form.
Complex induced_inner(const ComplexVector& phi, const ComplexVector& psi, const ComplexMatrix& eta,
                      bool allow_indefinite = false, double tol = kDefaultTol);

}  // namespace etakit
