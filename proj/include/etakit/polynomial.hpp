#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace etakit {

/// Real polynomial, constant term first. Trailing zeros are trimmed on
/// construction, so the zero polynomial has no coefficients and degree −1.
class RealPolynomial {
public:
    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs);

    /// Parses "c0,c1,..." (constant term first). Rejects complex entries,
    /// non-numeric tokens and non-finite values with InputError.
    static RealPolynomial parse(std::string_view text);

    static RealPolynomial monomial(int degree, double coeff);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    double operator()(double x) const;

    std::string to_string() const;

    friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

private:
    std::vector<double> coeffs_;
};

}  // namespace etakit
