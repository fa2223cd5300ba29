#include "skewcyl/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace skewcyl {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto p = parse_int(text.substr(0, slash));
        auto q = parse_int(text.substr(slash + 1));
        if (!p || !q || *q == 0) {
            return std::nullopt;
        }
        return Rational(*p, *q);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.size() > 17 || frac_part.empty()) {
            return std::nullopt;
        }
        for (char c : frac_part) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
        }
        std::string digits(int_part);
        if (digits.empty() || digits == "-" || digits == "+") {
            digits += "0";
        }
        digits += frac_part;
        auto all = parse_int(digits);
        if (!all) {
            return std::nullopt;
        }
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) {
            den *= 10;
        }
        return Rational(*all, den);
    }
    auto p = parse_int(text);
    if (!p) {
        return std::nullopt;
    }
    return Rational(*p, 1);
}

std::string Rational::to_string() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace skewcyl
