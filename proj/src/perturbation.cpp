#include "etakit/perturbation.hpp"

#include <algorithm>
#include <string>

namespace etakit {

double commutator_defect(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square_finite(a, "A");
    require_square_finite(b, "B");
    require_same_dimension(a, b, "commutator_defect");
    return (a * b - b * a).norm() / std::max(1.0, a.norm() * b.norm());
}

ComplexMatrix matrix_poly(const ComplexMatrix& k, const RealPolynomial& f) {
    require_square_finite(k, "K");
    const Eigen::Index n = k.rows();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * k;
        acc.diagonal().array() += *it;
    }
    return acc;
}

PerturbedHamiltonian perturb(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta,
                             const ComplexMatrix& k, const RealPolynomial& f,
                             const PerturbOptions& opts) {
    require_square_finite(hamiltonian, "hamiltonian");
    require_square_finite(eta, "eta");
    require_square_finite(k, "K");
    require_same_dimension(hamiltonian, eta, "perturb");
    require_same_dimension(hamiltonian, k, "perturb");
    const double tol = opts.tol;

    const MetricClass eta_class = classify_metric(eta, tol);
    if (!eta_class.hermitian) {
        throw PreconditionError("eta Hermitian",
                                "hermiticity defect " + std::to_string(eta_class.hermiticity_defect));
    }
    if (!eta_class.invertible) {
        throw PreconditionError("eta invertible", "smallest singular value " +
                                                      std::to_string(eta_class.min_singular_value));
    }
    const double r0 = residual(hamiltonian, eta);
    if (r0 > tol) throw PreconditionError("eta intertwines H", "residual " + std::to_string(r0));

    const double k_defect = hermiticity_defect(k);
    if (k_defect > tol) {
        throw PreconditionError("K Hermitian", "hermiticity defect " + std::to_string(k_defect));
    }
    const double comm = commutator_defect(k, eta);
    if (comm > tol) throw PreconditionError("K commutes with eta", "defect " + std::to_string(comm));

    const double h_defect = hermiticity_defect(hamiltonian);
    if (!opts.allow_hermitian && h_defect <= tol) {
        throw PreconditionError("H non-Hermitian", "H is Hermitian (defect " +
                                                       std::to_string(h_defect) + ")");
    }

    PerturbedHamiltonian out;
    out.hamiltonian = hamiltonian;
    out.k = k;
    out.f = f;
    out.eta = eta;
    out.perturbed = hamiltonian + matrix_poly(k, f);
    out.commutator_defect = comm;
    out.residual = residual(out.perturbed, eta);
    if (out.residual > tol) {
        throw PreconditionError("perturbed residual", std::to_string(out.residual));
    }
    if (!opts.allow_hermitian && hermiticity_defect(out.perturbed) <= tol) {
        throw PreconditionError("perturbed non-Hermitian", "H + f(K) came out Hermitian");
    }
    return out;
}

ComplexMatrix auto_K(const ComplexMatrix& eta, const RealPolynomial& f, double tol) {
    require_square_finite(eta, "eta");
    const double defect = hermiticity_defect(eta);
    if (defect > tol) throw PreconditionError("eta Hermitian", "hermiticity defect " + std::to_string(defect));
    return matrix_poly(eta, f);
}

}  // namespace etakit
