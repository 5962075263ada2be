#pragma once

// Polynomials in position x and momentum p with [x, p] = i, kept in normal
// order (every x to the left of every p).
//
// Conjugation by the momentum boost e^{−θp} fixes p and sends x to x + iθ.
// On polynomials this substitution is an exact algebra homomorphism, which is
// what check_symbolic relies on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "etakit/errors.hpp"
#include "etakit/polynomial.hpp"

namespace etakit {

/// Complex number with exact rational real and imaginary parts.
struct ExactComplex {
    mpq_class re;
    mpq_class im;

    ExactComplex() : re(0), im(0) {}
    ExactComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    ExactComplex(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }
    ExactComplex& operator*=(const ExactComplex& o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Coefficient-field adapter for BasicWeylPolynomial.
template <class S>
struct WeylScalar;

template <>
struct WeylScalar<ExactComplex> {
    /// Exact: every finite double is a dyadic rational.
    static ExactComplex from_real(double v) { return {mpq_class(v), 0}; }
    static ExactComplex from_integer(const mpz_class& z) { return {mpq_class(z), 0}; }
    static ExactComplex imag_unit() { return {0, 1}; }
    static ExactComplex conj(const ExactComplex& c) { return {c.re, -c.im}; }
    static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
    static std::string real_string(const ExactComplex& c) { return c.re.get_str(); }
    static std::string imag_string(const ExactComplex& c) { return c.im.get_str(); }
    static std::complex<double> to_complex(const ExactComplex& c) {
        return {c.re.get_d(), c.im.get_d()};
    }
};

template <>
struct WeylScalar<std::complex<double>> {
    using C = std::complex<double>;
    static C from_real(double v) { return {v, 0.0}; }
    static C from_integer(const mpz_class& z) { return {z.get_d(), 0.0}; }
    static C imag_unit() { return {0.0, 1.0}; }
    static C conj(const C& c) { return std::conj(c); }
    static bool is_zero(const C& c) { return c == C(0.0, 0.0); }
    static std::string real_string(const C& c);
    static std::string imag_string(const C& c);
    static C to_complex(const C& c) { return c; }
};

/// Σ c_ab x^a p^b in normal order. Zero coefficients are never stored, so two
/// polynomials are equal exactly when their term maps are equal.
template <class S>
class BasicWeylPolynomial {
public:
    using Scalar = S;
    using Traits = WeylScalar<S>;
    using Key = std::pair<unsigned, unsigned>;  // (power of x, power of p)
    using Terms = std::map<Key, S>;

    BasicWeylPolynomial() = default;

    static BasicWeylPolynomial monomial(unsigned a, unsigned b, S c) {
        BasicWeylPolynomial out;
        out.add_term(a, b, std::move(c));
        return out;
    }
    static BasicWeylPolynomial constant(S c) { return monomial(0, 0, std::move(c)); }
    static BasicWeylPolynomial x() { return monomial(1, 0, S(Traits::from_real(1.0))); }
    static BasicWeylPolynomial p() { return monomial(0, 1, S(Traits::from_real(1.0))); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    S coeff(unsigned a, unsigned b) const {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? S(Traits::from_real(0.0)) : it->second;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
        return d;
    }

    void add_term(unsigned a, unsigned b, const S& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace({a, b}, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    BasicWeylPolynomial& operator+=(const BasicWeylPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    BasicWeylPolynomial& operator-=(const BasicWeylPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    BasicWeylPolynomial& operator*=(const S& s) {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend BasicWeylPolynomial operator+(BasicWeylPolynomial a, const BasicWeylPolynomial& b) { return a += b; }
    friend BasicWeylPolynomial operator-(BasicWeylPolynomial a, const BasicWeylPolynomial& b) { return a -= b; }
    friend BasicWeylPolynomial operator*(BasicWeylPolynomial a, const S& s) { return a *= s; }
    friend BasicWeylPolynomial operator*(const S& s, BasicWeylPolynomial a) { return a *= s; }
    friend BasicWeylPolynomial operator-(BasicWeylPolynomial a) { return a *= S(Traits::from_real(-1.0)); }
    friend bool operator==(const BasicWeylPolynomial& a, const BasicWeylPolynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    Terms terms_;
};

using WeylPolynomial = BasicWeylPolynomial<ExactComplex>;
using FloatWeylPolynomial = BasicWeylPolynomial<std::complex<double>>;

namespace detail {

inline mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// (−i)^k
template <class S>
S minus_i_power(unsigned k) {
    using T = WeylScalar<S>;
    switch (k % 4) {
        case 0: return T::from_real(1.0);
        case 1: return -T::imag_unit();
        case 2: return T::from_real(-1.0);
        default: return T::imag_unit();
    }
}

/// Adds coeff · x^a0 · (p^b x^c) · p^b0 to `out`, reordering the middle with
/// p^b x^c = Σ_k C(b,k) C(c,k) k! (−i)^k x^{c−k} p^{b−k}.
template <class S>
void add_reordered(BasicWeylPolynomial<S>& out, unsigned a0, unsigned b, unsigned c, unsigned b0,
                   const S& coeff) {
    using T = WeylScalar<S>;
    const unsigned kmax = std::min(b, c);
    for (unsigned k = 0; k <= kmax; ++k) {
        const mpz_class comb = binomial(b, k) * binomial(c, k) * factorial(k);
        S term = coeff * T::from_integer(comb) * minus_i_power<S>(k);
        out.add_term(a0 + c - k, b - k + b0, term);
    }
}

}  // namespace detail

template <class S>
BasicWeylPolynomial<S> normal_multiply(const BasicWeylPolynomial<S>& lhs,
                                       const BasicWeylPolynomial<S>& rhs) {
    BasicWeylPolynomial<S> out;
    for (const auto& [kl, cl] : lhs.terms()) {
        for (const auto& [kr, cr] : rhs.terms()) {
            detail::add_reordered(out, kl.first, kl.second, kr.first, kr.second, cl * cr);
        }
    }
    return out;
}

template <class S>
BasicWeylPolynomial<S> operator*(const BasicWeylPolynomial<S>& lhs,
                                 const BasicWeylPolynomial<S>& rhs) {
    return normal_multiply(lhs, rhs);
}

/// (c x^a p^b)† = conj(c) p^b x^a, re-normal-ordered. x and p are self-adjoint.
template <class S>
BasicWeylPolynomial<S> weyl_adjoint(const BasicWeylPolynomial<S>& poly) {
    using T = WeylScalar<S>;
    BasicWeylPolynomial<S> out;
    for (const auto& [k, c] : poly.terms()) {
        detail::add_reordered(out, 0, k.second, k.first, 0, T::conj(c));
    }
    return out;
}

/// x^a p^b ↦ (x + iθ)^a p^b, i.e. conjugation e^{−θp} A e^{θp}.
template <class S>
BasicWeylPolynomial<S> boost_conjugate(const BasicWeylPolynomial<S>& poly, double theta) {
    using T = WeylScalar<S>;
    if (!std::isfinite(theta)) throw InputError("theta must be finite");
    const S shift = T::imag_unit() * T::from_real(theta);
    BasicWeylPolynomial<S> out;
    for (const auto& [k, c] : poly.terms()) {
        const unsigned a = k.first;
        // Powers shift^0 .. shift^a.
        std::vector<S> powers{T::from_real(1.0)};
        for (unsigned j = 1; j <= a; ++j) powers.push_back(powers.back() * shift);
        for (unsigned j = 0; j <= a; ++j) {
            S term = c * T::from_integer(detail::binomial(a, j)) * powers[a - j];
            out.add_term(j, k.second, term);
        }
    }
    return out;
}

/// Data for H̃ = p² + f(p) + α V(x − β − iγ). The boost parameter is always
/// derived as θ = 2γ.
struct ShiftedPotentialSpec {
    RealPolynomial potential;   // V
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    RealPolynomial momentum;    // f

    double theta() const noexcept { return 2.0 * gamma; }
};

/// Throws InputError on non-finite α, β, γ.
void validate(const ShiftedPotentialSpec& spec);

template <class S>
BasicWeylPolynomial<S> build_shifted_hamiltonian(const ShiftedPotentialSpec& spec) {
    using T = WeylScalar<S>;
    using Poly = BasicWeylPolynomial<S>;
    validate(spec);

    Poly h = Poly::monomial(0, 2, T::from_real(1.0));
    const auto& f = spec.momentum.coeffs();
    for (unsigned j = 0; j < f.size(); ++j) h.add_term(0, j, T::from_real(f[j]));

    // x-only terms commute, so (x + s)^j is a plain binomial expansion.
    const S s = T::from_real(-spec.beta) - T::imag_unit() * T::from_real(spec.gamma);
    const S alpha = T::from_real(spec.alpha);
    const auto& v = spec.potential.coeffs();
    std::vector<S> s_powers{T::from_real(1.0)};
    for (std::size_t j = 1; j < v.size(); ++j) s_powers.push_back(s_powers.back() * s);
    for (unsigned j = 0; j < v.size(); ++j) {
        if (v[j] == 0.0) continue;
        const S vj = alpha * T::from_real(v[j]);
        for (unsigned m = 0; m <= j; ++m) {
            h.add_term(m, 0, vj * T::from_integer(detail::binomial(j, m)) * s_powers[j - m]);
        }
    }
    return h;
}

/// R = e^{−θp} H̃ e^{θp} − H̃†, with θ = 2γ unless overridden. R = 0 certifies
/// that H̃ is pseudo-Hermitian under e^{−θp}.
template <class S>
BasicWeylPolynomial<S> check_symbolic(const ShiftedPotentialSpec& spec,
                                      std::optional<double> theta_override = std::nullopt) {
    const auto h = build_shifted_hamiltonian<S>(spec);
    const double theta = theta_override.value_or(spec.theta());
    return boost_conjugate(h, theta) - weyl_adjoint(h);
}

/// sqrt(Σ |c|²) over the coefficients.
template <class S>
double coefficient_norm(const BasicWeylPolynomial<S>& poly) {
    double acc = 0.0;
    for (const auto& [k, c] : poly.terms()) acc += std::norm(WeylScalar<S>::to_complex(c));
    return std::sqrt(acc);
}

/// Human-readable rendering, highest total degree first, e.g. "x^2 + (0-4i) x p".
template <class S>
std::string to_string(const BasicWeylPolynomial<S>& poly);

extern template std::string to_string(const WeylPolynomial&);
extern template std::string to_string(const FloatWeylPolynomial&);

}  // namespace etakit
