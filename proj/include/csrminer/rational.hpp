#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace csrminer {

/// Exact fraction with a positive denominator, always in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Parses a plain decimal such as "3", "3.25" or "-0.5" without going
    /// through binary floating point. Throws std::invalid_argument.
    static Rational parse_decimal(std::string_view text);

    /// Half-up rounding to `places` decimals: 8/3 -> "2.67".
    std::string to_fixed(int places = 2) const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace csrminer
