#include "etakit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace etakit {

MetricNotPositiveError::MetricNotPositiveError(double min_eigenvalue)
    : PreconditionError("metric not positive",
                        "minimum eigenvalue " + std::to_string(min_eigenvalue)),
      min_eigenvalue_(min_eigenvalue) {}

void require_square_finite(const ComplexMatrix& m, std::string_view what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InputError(std::string(what) + " must be a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw InputError(std::string(what) + " has non-finite entries");
    }
}

void require_finite(const ComplexVector& v, std::string_view what) {
    if (v.size() == 0) throw InputError(std::string(what) + " is empty");
    if (!v.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

void require_same_dimension(const ComplexMatrix& a, const ComplexMatrix& b,
                            std::string_view what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError(std::string("dimension mismatch in ") + std::string(what) + ": " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

bool singular_values_invertible(double sigma_min, double sigma_max, double tol) {
    return sigma_max > 0.0 && sigma_min > tol * sigma_max;
}

double residual(const ComplexMatrix& hamiltonian, const ComplexMatrix& eta) {
    require_square_finite(hamiltonian, "hamiltonian");
    require_square_finite(eta, "eta");
    require_same_dimension(hamiltonian, eta, "residual");
    const double scale = std::max(1.0, hamiltonian.norm() * eta.norm());
    return (eta * hamiltonian - hamiltonian.adjoint() * eta).norm() / scale;
}

MetricClass classify_metric(const ComplexMatrix& eta, double tol) {
    require_square_finite(eta, "eta");
    MetricClass c;
    c.hermiticity_defect = hermiticity_defect(eta);
    c.hermitian = c.hermiticity_defect <= tol;

    const Eigen::VectorXd sv = eta.jacobiSvd().singularValues();
    c.max_singular_value = sv(0);
    c.min_singular_value = sv(sv.size() - 1);
    c.invertible = c.hermitian &&
                   singular_values_invertible(c.min_singular_value, c.max_singular_value, tol);

    const ComplexMatrix herm = (eta + eta.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue_of_hermitian_part = es.eigenvalues()(0);
    c.positive = c.invertible && c.min_eigenvalue_of_hermitian_part > tol * c.max_singular_value;
    return c;
}

namespace {

// Orthonormal (under Re tr(A†B)) real basis of n×n Hermitian matrices in
// row-major order: E_ii for diagonal slots, then (E_ij + E_ji)/√2 and
// i(E_ij − E_ji)/√2 for each i < j.
std::vector<ComplexMatrix> hermitian_generators(Eigen::Index n) {
    std::vector<ComplexMatrix> gens;
    gens.reserve(static_cast<std::size_t>(n * n));
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if (i == j) {
                ComplexMatrix g = ComplexMatrix::Zero(n, n);
                g(i, i) = 1.0;
                gens.push_back(std::move(g));
                continue;
            }
            ComplexMatrix re = ComplexMatrix::Zero(n, n);
            re(i, j) = r;
            re(j, i) = r;
            gens.push_back(std::move(re));
            ComplexMatrix im = ComplexMatrix::Zero(n, n);
            im(i, j) = Complex(0.0, r);
            im(j, i) = Complex(0.0, -r);
            gens.push_back(std::move(im));
        }
    }
    return gens;
}

ComplexMatrix assemble(const std::vector<ComplexMatrix>& gens, const Eigen::VectorXd& coeffs) {
    ComplexMatrix m = ComplexMatrix::Zero(gens.front().rows(), gens.front().cols());
    for (std::size_t j = 0; j < gens.size(); ++j) m += coeffs(static_cast<Eigen::Index>(j)) * gens[j];
    return m;
}

// Reduced row-echelon form of the rows of `m`, dropping numerically zero rows.
Eigen::MatrixXd rref_rows(Eigen::MatrixXd m, double eps) {
    Eigen::Index pivot_row = 0;
    for (Eigen::Index col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        Eigen::Index best = pivot_row;
        for (Eigen::Index r = pivot_row + 1; r < m.rows(); ++r) {
            if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
        }
        if (std::abs(m(best, col)) <= eps) continue;
        m.row(pivot_row).swap(m.row(best));
        m.row(pivot_row) /= m(pivot_row, col);
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != pivot_row) m.row(r) -= m(r, col) * m.row(pivot_row);
        }
        ++pivot_row;
    }
    return m.topRows(pivot_row);
}

void fix_sign(ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (double part : {m(i, j).real(), m(i, j).imag()}) {
                if (part == 0.0) continue;
                if (part < 0.0) m = -m;
                return;
            }
        }
    }
}

}  // namespace

MetricBasis solve_metric_space(const ComplexMatrix& hamiltonian, double tol) {
    require_square_finite(hamiltonian, "hamiltonian");
    const Eigen::Index n = hamiltonian.rows();
    const auto gens = hermitian_generators(n);
    const Eigen::Index unknowns = n * n;

    // Columns: Re/Im parts of L(G_j) = G_j H − H† G_j, flattened.
    Eigen::MatrixXd op(2 * unknowns, unknowns);
    const ComplexMatrix h_adj = hamiltonian.adjoint();
    for (Eigen::Index j = 0; j < unknowns; ++j) {
        const ComplexMatrix& g = gens[static_cast<std::size_t>(j)];
        const ComplexMatrix image = g * hamiltonian - h_adj * g;
        for (Eigen::Index k = 0; k < unknowns; ++k) {
            const Complex z = image(k / n, k % n);
            op(2 * k, j) = z.real();
            op(2 * k + 1, j) = z.imag();
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    // Scale by ‖H‖ as well: for nearly Hermitian H every singular value of the
    // operator is tiny and sv(0) alone would hide the nullspace.
    const double cutoff = kNullspaceThreshold * std::max(sv(0), 2.0 * hamiltonian.norm());
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Eigen::Index nullity = unknowns - rank;

    MetricBasis out;
    out.hamiltonian = hamiltonian;
    if (nullity == 0) return out;

    const Eigen::MatrixXd null_rows = svd.matrixV().rightCols(nullity).transpose();
    Eigen::MatrixXd rows = rref_rows(null_rows, 1e-9);

    // Modified Gram-Schmidt, two passes.
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < i; ++j) {
                rows.row(i) -= rows.row(i).dot(rows.row(j)) * rows.row(j);
            }
        }
        rows.row(i).normalize();
    }

    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        ComplexMatrix b = assemble(gens, rows.row(i).transpose());
        fix_sign(b);
        out.classifications.push_back(classify_metric(b, tol));
        out.basis.push_back(std::move(b));
    }
    return out;
}

double projection_defect(const MetricBasis& basis, const ComplexMatrix& eta) {
    require_square_finite(eta, "eta");
    require_same_dimension(basis.hamiltonian, eta, "projection_defect");
    const double norm = eta.norm();
    if (norm == 0.0) return 0.0;
    ComplexMatrix rest = eta;
    for (const auto& b : basis.basis) {
        rest -= (b.adjoint() * eta).trace().real() * b;
    }
    return rest.norm() / norm;
}

std::optional<ComplexMatrix> find_metric(const MetricBasis& basis, bool want_positive,
                                         double tol, std::uint64_t seed) {
    if (basis.basis.empty()) return std::nullopt;

    auto accept = [&](const ComplexMatrix& candidate) -> std::optional<ComplexMatrix> {
        const double norm = candidate.norm();
        if (norm == 0.0) return std::nullopt;
        const ComplexMatrix unit = candidate / norm;
        const MetricClass c = classify_metric(unit, tol);
        if (!want_positive) {
            if (c.invertible) return unit;
            return std::nullopt;
        }
        if (c.positive) return unit;
        if (c.invertible && classify_metric(-unit, tol).positive) return ComplexMatrix(-unit);
        return std::nullopt;
    };

    for (const auto& b : basis.basis) {
        if (auto hit = accept(b)) return hit;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < kFindMetricTrials; ++trial) {
        ComplexMatrix combo = ComplexMatrix::Zero(basis.hamiltonian.rows(), basis.hamiltonian.cols());
        for (const auto& b : basis.basis) combo += gauss(rng) * b;
        if (auto hit = accept(combo)) return hit;
    }
    return std::nullopt;
}

HamiltonianWithMetric catalog_two_point(Complex x, Complex y) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(y.real()) ||
        !std::isfinite(y.imag())) {
        throw InputError("two-point parameters must be finite");
    }
    if (x.imag() == 0.0) {
        throw InputError("two-point Hamiltonian requires Im(x) != 0 (otherwise it is Hermitian)");
    }
    HamiltonianWithMetric out;
    out.hamiltonian.resize(2, 2);
    out.hamiltonian << x, y, std::conj(y), std::conj(x);
    out.eta.resize(2, 2);
    if (y != Complex(0.0, 0.0)) {
        out.eta << 0.0, y, std::conj(y), 0.0;
    } else {
        out.eta << 0.0, 1.0, 1.0, 0.0;
    }
    return out;
}

HamiltonianWithMetric catalog_oscillator(double omega) {
    if (!std::isfinite(omega)) throw InputError("omega must be finite");
    if (omega == 0.0) throw InputError("oscillator Hamiltonian requires omega != 0");
    const Complex i(0.0, 1.0);
    HamiltonianWithMetric out;
    out.hamiltonian.resize(2, 2);
    out.hamiltonian << 0.0, i, -i * omega * omega, 0.0;
    out.eta.resize(2, 2);
    out.eta << 0.0, i, -i, 0.0;
    return out;
}

}  // namespace etakit
