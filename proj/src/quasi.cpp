#include "etakit/quasi.hpp"

#include <string>

namespace etakit {

InducedForm metric_sqrt(const ComplexMatrix& eta, double tol) {
    const MetricClass cls = classify_metric(eta, tol);
    if (!cls.hermitian) {
        throw PreconditionError("eta Hermitian",
                                "hermiticity defect " + std::to_string(cls.hermiticity_defect));
    }
    if (!cls.positive) throw MetricNotPositiveError(cls.min_eigenvalue_of_hermitian_part);

    const ComplexMatrix herm = (eta + eta.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    const Eigen::VectorXd root = es.eigenvalues().cwiseSqrt();
    const ComplexMatrix& u = es.eigenvectors();

    InducedForm form;
    form.eta = eta;
    form.sqrt_eta = u * root.cast<Complex>().asDiagonal() * u.adjoint();
    form.inv_sqrt_eta = u * root.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
    return form;
}

ComplexMatrix induced_hamiltonian(const ComplexMatrix& hamiltonian, const InducedForm& form,
                                  double tol) {
    require_square_finite(hamiltonian, "hamiltonian");
    require_same_dimension(hamiltonian, form.eta, "induced_hamiltonian");
    const double r = residual(hamiltonian, form.eta);
    if (r > tol) throw PreconditionError("eta intertwines H", "residual " + std::to_string(r));
    return form.sqrt_eta * hamiltonian * form.inv_sqrt_eta;
}

Complex induced_inner(const ComplexVector& phi, const ComplexVector& psi, const ComplexMatrix& eta,
                      bool allow_indefinite, double tol) {
    require_finite(phi, "phi");
    require_finite(psi, "psi");
    require_square_finite(eta, "eta");
    if (phi.size() != eta.rows() || psi.size() != eta.rows()) {
        throw InputError("dimension mismatch in induced_inner: phi " + std::to_string(phi.size()) +
                         ", psi " + std::to_string(psi.size()) + ", eta " +
                         std::to_string(eta.rows()));
    }
    const MetricClass cls = classify_metric(eta, tol);
    if (!cls.hermitian) {
        throw PreconditionError("eta Hermitian",
                                "hermiticity defect " + std::to_string(cls.hermiticity_defect));
    }
    if (!allow_indefinite && !cls.positive) {
        throw MetricNotPositiveError(cls.min_eigenvalue_of_hermitian_part);
    }
    return phi.dot(eta * psi);  // Eigen's dot conjugates the left operand
}

}  // namespace etakit
