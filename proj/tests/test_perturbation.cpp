#include "doctest.h"

#include <random>

#include "etakit/perturbation.hpp"
#include "oracles.hpp"

using namespace etakit;
using oracle::Mat;

namespace {

const Complex I(0.0, 1.0);

Mat m2(Complex a, Complex b, Complex c, Complex d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

RealPolynomial random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coeff(rng);
    return RealPolynomial(c);
}

}  // namespace

TEST_CASE("RealPolynomial parsing and normalization") {
    CHECK(RealPolynomial::parse("0,3").coeffs() == std::vector<double>{0.0, 3.0});
    CHECK(RealPolynomial::parse("1, -2.5e-1, 0").coeffs() == std::vector<double>{1.0, -0.25});
    CHECK(RealPolynomial::parse("0").is_zero());
    CHECK(RealPolynomial::parse("0").degree() == -1);
    CHECK(RealPolynomial::parse("+4").degree() == 0);
    CHECK_THROWS_AS(RealPolynomial::parse("1,2i"), InputError);
    CHECK_THROWS_AS(RealPolynomial::parse("1,,2"), InputError);
    CHECK_THROWS_AS(RealPolynomial::parse("abc"), InputError);
    CHECK_THROWS_AS(RealPolynomial::parse(""), InputError);
    CHECK(RealPolynomial({1.0, 2.0, 3.0})(2.0) == 17.0);
}

TEST_CASE("commutator_defect") {
    std::mt19937_64 rng(1);
    const Mat b = oracle::random_complex(rng, 3);
    CHECK(commutator_defect(Mat::Identity(3, 3), b) == 0.0);
    const Mat eta = m2(0, I, -I, 0);
    CHECK(commutator_defect(eta, eta * eta * eta) == 0.0);
    // [[0,1],[1,0]]·diag(1,2) − diag(1,2)·[[0,1],[1,0]] = [[0,1],[−1,0]]; √2 / (√2·√5)
    CHECK(commutator_defect(m2(0, 1, 1, 0), m2(1, 0, 0, 2)) ==
          doctest::Approx(0.4472135954999579).epsilon(1e-14));
    CHECK_THROWS_AS(commutator_defect(Mat::Identity(2, 2), Mat::Identity(3, 3)), InputError);
}

TEST_CASE("matrix_poly") {
    CHECK(matrix_poly(m2(1, 0, 0, 2), RealPolynomial({0, 0, 1})) == m2(1, 0, 0, 4));
    CHECK(matrix_poly(m2(0, 1, 1, 0), RealPolynomial({1, 1})) == m2(1, 1, 1, 1));
    CHECK(matrix_poly(m2(0, I, -I, 0), RealPolynomial({0, 0, 1})) == Mat::Identity(2, 2));
    CHECK(matrix_poly(m2(5, 1, 2, 3), RealPolynomial()) == Mat::Zero(2, 2));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 5;
        const Mat k = oracle::random_hermitian(rng, n);
        const RealPolynomial f = random_poly(rng, 5);
        Mat direct = Mat::Zero(n, n);
        for (std::size_t j = 0; j < f.coeffs().size(); ++j)
            direct += f.coeffs()[j] * oracle::mat_pow(k, static_cast<unsigned>(j));
        const Mat horner = matrix_poly(k, f);
        CHECK((horner - direct).norm() <= 1e-11 * std::max(1.0, direct.norm()));
        CHECK(hermiticity_defect(horner) <= 1e-13);
    }
}

TEST_CASE("perturb: oscillator with K = eta, f = 3x") {
    const auto osc = catalog_oscillator(2.0);
    const PerturbedHamiltonian p =
        perturb(osc.hamiltonian, osc.eta, osc.eta, RealPolynomial({0.0, 3.0}));
    CHECK(p.perturbed == m2(0, Complex(0, 4), Complex(0, -7), 0));
    CHECK(p.residual == 0.0);
    CHECK(p.commutator_defect == 0.0);
}

TEST_CASE("perturb: zero polynomial leaves H unchanged") {
    const auto osc = catalog_oscillator(2.0);
    const PerturbedHamiltonian p =
        perturb(osc.hamiltonian, osc.eta, Mat::Identity(2, 2), RealPolynomial());
    CHECK(p.perturbed == osc.hamiltonian);
}

TEST_CASE("perturb: each violated hypothesis is named") {
    const auto osc = catalog_oscillator(2.0);
    auto named = [&](const Mat& h, const Mat& eta, const Mat& k, PerturbOptions opts = {}) {
        try {
            perturb(h, eta, k, RealPolynomial({0.0, 1.0}), opts);
        } catch (const PreconditionError& e) {
            return e.check();
        }
        return std::string("none");
    };
    CHECK(named(osc.hamiltonian, osc.eta, m2(1, 0, 0, 2)) == "K commutes with eta");
    CHECK(named(osc.hamiltonian, osc.eta, m2(0, 1, 0, 0)) == "K Hermitian");
    CHECK(named(osc.hamiltonian, m2(0, 1, 0, 0), osc.eta) == "eta Hermitian");
    CHECK(named(osc.hamiltonian, m2(1, 0, 0, 0), Mat::Identity(2, 2)) == "eta invertible");
    CHECK(named(osc.hamiltonian, Mat::Identity(2, 2), Mat::Identity(2, 2)) == "eta intertwines H");
    const Mat herm = m2(1, 0, 0, 2);
    CHECK(named(herm, Mat::Identity(2, 2), Mat::Identity(2, 2)) == "H non-Hermitian");
    CHECK(named(herm, Mat::Identity(2, 2), Mat::Identity(2, 2), {kDefaultTol, true}) == "none");
    CHECK_THROWS_AS(perturb(herm, Mat::Identity(3, 3), Mat::Identity(2, 2), RealPolynomial()),
                    InputError);
}

TEST_CASE("auto_K") {
    const Mat eta = m2(0, I, -I, 0);
    CHECK(auto_K(eta, RealPolynomial({0.0, 2.0})) == m2(0, Complex(0, 2), Complex(0, -2), 0));
    CHECK(auto_K(eta, RealPolynomial({0.0, 0.0, 1.0})) == Mat::Identity(2, 2));
    std::mt19937_64 rng(17);
    const Mat h = oracle::random_hermitian(rng, 4);
    CHECK(auto_K(h, RealPolynomial({2.5})) == 2.5 * Mat::Identity(4, 4));
    CHECK_THROWS_AS(auto_K(m2(0, 1, 0, 0), RealPolynomial({1.0})), InputError);

    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 6;
        const Mat e = oracle::random_hermitian(rng, n);
        const Mat k = auto_K(e, random_poly(rng, 5));
        CHECK(commutator_defect(k, e) <= 1e-13);
    }
}

TEST_CASE("perturb properties on random pseudo-Hermitian pairs") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        auto [h, eta] = oracle::random_pseudo_hermitian(rng, n);
        const RealPolynomial f = random_poly(rng, 3);
        const Mat k = auto_K(eta, f);
        const PerturbedHamiltonian p = perturb(h, eta, k, RealPolynomial({0.0, 1.0}), {1e-9, false});
        // anti-Hermitian part is untouched
        const Mat drift = (p.perturbed - p.perturbed.adjoint()) - (h - h.adjoint());
        CHECK(drift.norm() <= 1e-12 * std::max(1.0, h.norm()));
        CHECK(p.residual <= 1e-9);
        // positivity of the metric is not affected by perturbing H
        CHECK(classify_metric(p.eta).positive == classify_metric(eta).positive);
    }
}

TEST_CASE("spectrum shift moves eigenvalues by alpha") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 6;
        Mat h = oracle::random_complex(rng, n);
        h *= 10.0 / std::max(10.0, h.norm()) * 0.9;
        const double alpha = shift(rng);
        const Mat shifted = h + auto_K(Mat::Identity(n, n), RealPolynomial({alpha}));  // K = αI
        Eigen::ComplexEigenSolver<Mat> a(h, false), b(shifted, false);
        std::vector<Complex> ea(a.eigenvalues().data(), a.eigenvalues().data() + n);
        std::vector<Complex> eb(b.eigenvalues().data(), b.eigenvalues().data() + n);
        // match each shifted eigenvalue to its nearest original + alpha
        for (Complex z : eb) {
            double best = 1e300;
            for (Complex w : ea) best = std::min(best, std::abs(z - (w + alpha)));
            CHECK(best <= 1e-9);
        }
    }
}
