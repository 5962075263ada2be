#include "etakit/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace etakit {

bool EtaChain::any_degenerate() const {
    return std::find(degenerate.begin(), degenerate.end(), true) != degenerate.end();
}

ComplexMatrix next_eta(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta) {
    require_square_finite(hamiltonian, "hamiltonian");
    require_square_finite(eta, "eta");
    require_same_dimension(hamiltonian, eta, "next_eta");
    return hamiltonian.adjoint() * eta;
}

int matrix_set_rank(const std::vector<ComplexMatrix>& mats, double tol) {
    if (mats.empty()) return 0;
    const Eigen::Index len = mats.front().size();
    ComplexMatrix cols = ComplexMatrix::Zero(len, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const double norm = mats[k].norm();
        if (norm == 0.0) continue;
        cols.col(static_cast<Eigen::Index>(k)) =
            Eigen::Map<const ComplexVector>(mats[k].data(), len) / norm;
    }
    const Eigen::VectorXd sv = cols.jacobiSvd().singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    // Relative cutoff looser than tol: unnormalized chains carry rounding of
    // order ‖H‖^k·eps into each column.
    const double cutoff = std::max(tol, kNullspaceThreshold) * sv(0);
    return static_cast<int>((sv.array() > cutoff).count());
}

namespace {

void check_eta0(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta0, double tol) {
    require_square_finite(hamiltonian, "hamiltonian");
    require_square_finite(eta0, "eta0");
    require_same_dimension(hamiltonian, eta0, "chain");
    const double defect = hermiticity_defect(eta0);
    if (defect > tol) {
        throw PreconditionError("eta0 Hermitian", "hermiticity defect " + std::to_string(defect));
    }
    const double r = residual(hamiltonian, eta0);
    if (r > tol) {
        throw PreconditionError("eta0 intertwines H", "residual " + std::to_string(r));
    }
}

EtaChain run_chain(const ComplexMatrix& generator, const ComplexMatrix& reference,
                   const ComplexMatrix& eta0, int k_max, bool normalize, double tol) {
    if (k_max < 0) throw InputError("k_max must be nonnegative");
    EtaChain chain;
    chain.hamiltonian = reference;
    chain.normalized = normalize;
    const ComplexMatrix gen_adj = generator.adjoint();

    ComplexMatrix current = eta0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) current = gen_adj * current;
        if (normalize) {
            const double norm = current.norm();
            if (norm > 0.0) current /= norm;
        }
        MetricClass cls = classify_metric(current, tol);
        chain.degenerate.push_back(
            !singular_values_invertible(cls.min_singular_value, cls.max_singular_value, tol));
        chain.residuals.push_back(residual(reference, current));
        chain.classes.push_back(cls);
        chain.etas.push_back(current);
    }
    chain.rank = matrix_set_rank(chain.etas, tol);
    return chain;
}

}  // namespace

EtaChain build_chain(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta0, int k_max,
                     bool normalize, double tol) {
    check_eta0(hamiltonian, eta0, tol);
    return run_chain(hamiltonian, hamiltonian, eta0, k_max, normalize, tol);
}

ShiftResult shift_for_invertibility(const ComplexMatrix& hamiltonian, double tol) {
    require_square_finite(hamiltonian, "hamiltonian");
    const Eigen::Index n = hamiltonian.rows();
    auto invertible = [tol](const ComplexMatrix& m) {
        const Eigen::VectorXd sv = m.jacobiSvd().singularValues();
        return singular_values_invertible(sv(sv.size() - 1), sv(0), tol);
    };
    if (invertible(hamiltonian)) return {0.0, hamiltonian};

    const double step = 1.0 + hamiltonian.norm();
    for (int rung = 0; rung < kShiftLadderRungs; ++rung) {
        const double magnitude = static_cast<double>(rung / 2 + 1) * step;
        const double alpha = (rung % 2 == 0) ? magnitude : -magnitude;
        ComplexMatrix shifted = hamiltonian + alpha * ComplexMatrix::Identity(n, n);
        if (invertible(shifted)) return {alpha, std::move(shifted)};
    }
    throw std::runtime_error("shift ladder exhausted without finding an invertible H + alpha I");
}

EtaChain chain_via_shift(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta0, int k_max,
                         bool normalize, double tol) {
    check_eta0(hamiltonian, eta0, tol);
    ShiftResult shift = shift_for_invertibility(hamiltonian, tol);
    EtaChain chain = run_chain(shift.shifted, hamiltonian, eta0, k_max, normalize, tol);
    chain.shift_alpha = shift.alpha;
    return chain;
}

}  // namespace etakit
