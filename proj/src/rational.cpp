#include "csrminer/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace csrminer {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty decimal");
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("bad decimal: " + std::string(text));
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: " + std::string(text));
        if (num > 100'000'000'000'000LL || den > 100'000'000'000'000LL) {
            throw std::invalid_argument("decimal too long: " + std::string(text));
        }
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal: " + std::string(text));
    return Rational(negative ? -num : num, den);
}

std::string Rational::to_fixed(int places) const {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    // half-up on magnitude, sign applied afterwards
    const bool negative = num_ < 0;
    const __int128 mag = negative ? -static_cast<__int128>(num_) : num_;
    const __int128 scaled = (mag * scale * 2 + den_) / (2 * static_cast<__int128>(den_));
    const auto whole = static_cast<std::int64_t>(scaled / scale);
    const auto frac = static_cast<std::int64_t>(scaled % scale);
    std::string out = negative && scaled != 0 ? "-" : "";
    out += std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("division by zero rational");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

}  // namespace csrminer
