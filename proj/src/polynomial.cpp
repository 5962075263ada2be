#include "etakit/polynomial.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "etakit/errors.hpp"

namespace etakit {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw InputError("polynomial coefficients must be finite");
    }
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

RealPolynomial RealPolynomial::parse(std::string_view text) {
    std::vector<double> coeffs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (token.empty()) throw InputError("empty coefficient in polynomial '" + std::string(text) + "'");
        if (token.find_first_of("ij") != std::string_view::npos) {
            throw InputError("polynomial coefficients must be real, got '" + std::string(token) + "'");
        }
        if (token.front() == '+') token.remove_prefix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw InputError("invalid polynomial coefficient '" + std::string(token) + "'");
        }
        coeffs.push_back(value);
        if (end == text.size()) break;
        start = end + 1;
    }
    return RealPolynomial(std::move(coeffs));
}

RealPolynomial RealPolynomial::monomial(int degree, double coeff) {
    if (degree < 0) throw InputError("monomial degree must be nonnegative");
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return RealPolynomial(std::move(c));
}

double RealPolynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string RealPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ',';
        os << coeffs_[i];
    }
    return os.str();
}

}  // namespace etakit
