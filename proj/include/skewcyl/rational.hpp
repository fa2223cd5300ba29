// Small exact rationals used to name points of the real axis without rounding.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace skewcyl {

using Complex = std::complex<double>;

/// Reduced fraction num/den with den > 0.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return {-num_, den_}; }
    friend bool operator==(const Rational&, const Rational&) = default;

    /// Parses "p/q", "p" or a decimal literal such as "-0.125" (exactly).
    static std::optional<Rational> parse(std::string_view text);
    std::string to_string() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// A point of the base disc, optionally carrying an exact real value.
struct BasePoint {
    Complex value;
    std::optional<Rational> exact;

    BasePoint(Complex z) : value(z) {}
    BasePoint(double x) : value(x, 0.0) {}
    BasePoint(Rational q) : value(q.to_double(), 0.0), exact(q) {}
};

}  // namespace skewcyl
