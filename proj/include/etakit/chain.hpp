#pragma once

#include <vector>

#include "etakit/metric.hpp"

namespace etakit {

/// Sequence η_0, η_1 = H†η_0, …, η_K = (H†)^K η_0.
struct EtaChain {
    ComplexMatrix hamiltonian;        // H the residuals refer to (never the shifted one)
    std::vector<ComplexMatrix> etas;
    std::vector<double> residuals;
    std::vector<MetricClass> classes;
    std::vector<bool> degenerate;     // smallest singular value below threshold
    bool normalized = false;
    double shift_alpha = 0.0;
    int rank = 0;                     // rank of {η_k} as vectors in C^{n²}

    bool any_degenerate() const;
};

/// H†·η. Preserves Hermiticity when η is a Hermitian metric for H.
ComplexMatrix next_eta(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta);

/// Builds η_0 … η_{k_max}. With `normalize` each element is rescaled to unit
/// Frobenius norm (a zero element is left as is). Throws PreconditionError if
/// eta0 is not Hermitian or does not intertwine H within `tol`.
EtaChain build_chain(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta0, int k_max,
                     bool normalize = false, double tol = kDefaultTol);

struct ShiftResult {
    double alpha = 0.0;
    ComplexMatrix shifted;
};

inline constexpr int kShiftLadderRungs = 100;

/// Real α with H + αI invertible. α = 0 when H already is; otherwise the
/// first rung of {1, −1, 2, −2, …}·(1 + ‖H‖_F) that works.
ShiftResult shift_for_invertibility(const ComplexMatrix& hamiltonian, double tol = kDefaultTol);

/// Chain built on H + αI, then verified against the original H. Any η that
/// intertwines H intertwines H + αI for real α, and conversely.
EtaChain chain_via_shift(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta0, int k_max,
                         bool normalize = false, double tol = kDefaultTol);

/// Rank over C of a set of equally sized matrices, each scaled to unit norm.
int matrix_set_rank(const std::vector<ComplexMatrix>& mats, double tol = kDefaultTol);

}  // namespace etakit
