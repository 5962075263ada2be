#include "etakit/weyl.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace etakit {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string monomial_suffix(unsigned a, unsigned b) {
    std::string out;
    if (a == 1) out += " x";
    if (a > 1) out += " x^" + std::to_string(a);
    if (b == 1) out += " p";
    if (b > 1) out += " p^" + std::to_string(b);
    return out;
}

}  // namespace

std::string WeylScalar<std::complex<double>>::real_string(const C& c) { return shortest(c.real()); }
std::string WeylScalar<std::complex<double>>::imag_string(const C& c) { return shortest(c.imag()); }

void validate(const ShiftedPotentialSpec& spec) {
    if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta) || !std::isfinite(spec.gamma)) {
        throw InputError("alpha, beta and gamma must be finite reals");
    }
}

template <class S>
std::string to_string(const BasicWeylPolynomial<S>& poly) {
    using T = WeylScalar<S>;
    if (poly.is_zero()) return "0";
    std::vector<std::pair<typename BasicWeylPolynomial<S>::Key, S>> ordered(poly.terms().begin(),
                                                                           poly.terms().end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
        const unsigned dl = l.first.first + l.first.second;
        const unsigned dr = r.first.first + r.first.second;
        if (dl != dr) return dl > dr;
        return l.first.first > r.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : ordered) {
        if (!first) os << " + ";
        first = false;
        os << '(' << T::real_string(c) << (T::imag_string(c).front() == '-' ? "" : "+")
           << T::imag_string(c) << "i)" << monomial_suffix(k.first, k.second);
    }
    return os.str();
}

template std::string to_string(const WeylPolynomial&);
template std::string to_string(const FloatWeylPolynomial&);

}  // namespace etakit
