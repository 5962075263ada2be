#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "etakit/errors.hpp"

namespace etakit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Relative tolerance used by verification paths unless overridden.
inline constexpr double kDefaultTol = 1e-10;

/// Singular values of the realified intertwining operator below this
/// fraction of the largest one are treated as zero.
inline constexpr double kNullspaceThreshold = 1e-8;

// Validation helpers. All throw InputError; `what` names the operand.
void require_square_finite(const ComplexMatrix& m, std::string_view what);
void require_finite(const ComplexVector& v, std::string_view what);
void require_same_dimension(const ComplexMatrix& a, const ComplexMatrix& b,
                            std::string_view what);

/// ‖M − M†‖_F / max(1, ‖M‖_F)
double hermiticity_defect(const ComplexMatrix& m);

/// True when σ_max > 0 and σ_min > tol·σ_max.
bool singular_values_invertible(double sigma_min, double sigma_max, double tol);

/// Relative intertwining residual ‖ηH − H†η‖_F / max(1, ‖H‖_F·‖η‖_F).
///
/// Evaluated in multiplied-through form, so η need not be invertible.
double residual(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta);

struct MetricClass {
    bool hermitian = false;
    bool invertible = false;
    bool positive = false;
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    double min_eigenvalue_of_hermitian_part = 0.0;
    double hermiticity_defect = 0.0;
};

/// Classifies a candidate metric. Thresholds scale with the largest singular
/// value, so the boolean flags are invariant under positive rescaling.
MetricClass classify_metric(const ComplexMatrix& eta, double tol = kDefaultTol);

/// Real-linear basis of the Hermitian solutions of ηH = H†η.
struct MetricBasis {
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> basis;
    std::vector<MetricClass> classifications;

    std::size_t dimension() const noexcept { return basis.size(); }
};

/// Solves ηH − H†η = 0 over Hermitian η.
///
/// The map η ↦ ηH − H†η is real-linear on the n²-dimensional real space of
/// Hermitian matrices. Its nullspace comes from an SVD of the realified
/// operator; the nullspace is then put in reduced row-echelon form and
/// Gram-Schmidt orthonormalized under Re tr(A†B), which makes the basis a
/// function of the solution space alone. Each element's first nonzero
/// component (row-major, real part before imaginary part) is positive.
MetricBasis solve_metric_space(const ComplexMatrix& hamiltonian,
                               double tol = kDefaultTol);

/// Relative distance of `eta` from span(basis): ‖η − Pη‖_F / ‖η‖_F, where P
/// is the orthogonal projection under Re tr(A†B). Returns 0 for η = 0.
double projection_defect(const MetricBasis& basis, const ComplexMatrix& eta);

inline constexpr int kFindMetricTrials = 1000;

/// Picks a unit-Frobenius-norm invertible (optionally positive) metric from
/// the span. Basis elements (and their negations) are tried first, then
/// `kFindMetricTrials` Gaussian combinations drawn from a PRNG seeded by
/// `seed`.
std::optional<ComplexMatrix> find_metric(const MetricBasis& basis, bool want_positive,
                                         double tol = kDefaultTol,
                                         std::uint64_t seed = 0);

struct HamiltonianWithMetric {
    ComplexMatrix hamiltonian;
    ComplexMatrix eta;
};

/// Particle on a two-point axis: H = [[x, y], [ȳ, x̄]] with Im x ≠ 0.
/// η = [[0, y], [ȳ, 0]] for y ≠ 0, otherwise the exchange matrix.
HamiltonianWithMetric catalog_two_point(Complex x, Complex y);

/// Two-level oscillator: H = [[0, i], [−iω², 0]], η = [[0, i], [−i, 0]].
/// Rejects ω = 0 (H is singular there).
HamiltonianWithMetric catalog_oscillator(double omega);

}  // namespace etakit
