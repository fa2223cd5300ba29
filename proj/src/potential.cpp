#include "skewcyl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace skewcyl {

namespace {

void require_in_disc(Complex z, const char* what) {
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error(std::string(what) + ": z must lie in the open unit disc");
    }
}

void require_count(int count) {
    if (count < 1) {
        throw std::invalid_argument("truncation must be a positive integer");
    }
}

double distance_to_segment(Complex z, double lo, double hi) {
    const double x = std::clamp(z.real(), lo, hi);
    return std::abs(z - Complex(x, 0.0));
}

}  // namespace

double plus_center(int n) {
    return static_cast<double>(n) / static_cast<double>(2 * n + 1);
}

std::vector<SingularTerm> singular_points(Side side, int count) {
    require_count(count);
    const double sign = side == Side::plus ? 1.0 : -1.0;
    std::vector<SingularTerm> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    out.push_back({sign * 0.5, 1.0});
    for (int n = 1; n <= count; ++n) {
        out.push_back({sign * plus_center(n), std::ldexp(1.0, -n)});
    }
    return out;
}

std::vector<ExactSingularTerm> singular_points_exact(Side side, int count) {
    require_count(count);
    if (count > 62) {
        throw std::invalid_argument("exact weights 2^-n are limited to n <= 62");
    }
    const std::int64_t sign = side == Side::plus ? 1 : -1;
    std::vector<ExactSingularTerm> out;
    out.push_back({Rational(sign, 2), Rational(1)});
    for (int n = 1; n <= count; ++n) {
        out.push_back({Rational(sign * n, 2 * n + 1), Rational(1, std::int64_t{1} << n)});
    }
    return out;
}

bool in_plus_set(const Rational& q) {
    if (q.num() == 1 && q.den() == 2) {
        return true;
    }
    return q.num() >= 1 && q.den() == 2 * q.num() + 1;
}

bool in_minus_set(const Rational& q) {
    return in_plus_set(-q);
}

LogPotential::LogPotential(int truncation) : truncation_(truncation) {
    require_count(truncation);
    terms_ = singular_points(Side::plus, truncation);
}

PotentialValue LogPotential::eval(Complex z) const {
    require_in_disc(z, "eval_u");
    double sum = 0.0;
    // Smallest weights first keeps the rounding of the partial sum small.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Complex a(it->center, 0.0);
        if (z == a || z == -a) {
            return {-std::numeric_limits<double>::infinity(), 0.0};
        }
        sum += it->weight * (std::log(std::abs(z - a)) + std::log(std::abs(z + a)));
    }
    const double tail_start = plus_center(truncation_ + 1);
    const double d = std::min(distance_to_segment(z, tail_start, 0.5),
                              distance_to_segment(z, -0.5, -tail_start));
    const double bound = d > 0.0 ? tail_bound(z) : std::numeric_limits<double>::infinity();
    return {sum, bound};
}

Complex LogPotential::eval_z(Complex z) const {
    Complex sum(0.0, 0.0);
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Complex a(it->center, 0.0);
        if (z == a || z == -a) {
            throw std::domain_error("eval_u_z: z coincides with a singular point");
        }
        sum += it->weight * (1.0 / (z - a) + 1.0 / (z + a));
    }
    return 0.5 * sum;
}

double LogPotential::tail_bound(Complex z) const {
    const double tail_start = plus_center(truncation_ + 1);
    const double d = std::min(distance_to_segment(z, tail_start, 0.5),
                              distance_to_segment(z, -0.5, -tail_start));
    if (!(d > 0.0)) {
        throw std::domain_error("tail_bound: z lies on a tail segment");
    }
    return std::ldexp(1.0, -truncation_) * 2.0 * std::max(std::abs(std::log(d)), std::log(3.0));
}

double LogPotential::upper_bound_on_disc() {
    return 4.0 * std::log(3.0);
}

double LogPotential::distance_to_centers(Complex z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) {
        d = std::min({d, std::abs(z - t.center), std::abs(z + t.center)});
    }
    return d;
}

}  // namespace skewcyl
