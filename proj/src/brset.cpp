#include "skewcyl/brset.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewcyl {

namespace {

void require_in_disc(Complex z) {
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("brset: z must lie in the open unit disc");
    }
}

}  // namespace

DiscFibration::DiscFibration(double A, LogPotential potential, SmoothStep step)
    : A_(A), potential_(std::move(potential)), step_(step) {
    if (!std::isfinite(A)) {
        throw std::invalid_argument("DiscFibration: A must be finite");
    }
}

double DiscFibration::radius_exponent(Complex z) const {
    return potential_.eval(z).value + std::norm(z) + A_;
}

FiberDescriptor DiscFibration::fiber(const BasePoint& p) const {
    require_in_disc(p.value);
    if (p.exact) {
        if (in_plus_set(*p.exact)) {
            return {p.value, Complex(0.0, 0.0), 0.0, true};
        }
        if (in_minus_set(*p.exact)) {
            return {p.value, Complex(1.0, 0.0), 0.0, true};
        }
    }
    const double radius = std::exp(radius_exponent(p.value));
    return {p.value, Complex(step_.eval(p.value), 0.0), radius, radius == 0.0};
}

bool DiscFibration::contains(Complex w, const BasePoint& z) const {
    const FiberDescriptor f = fiber(z);
    return std::abs(w - f.center) <= f.radius;
}

double DiscFibration::defining_value(Complex w, const BasePoint& z) const {
    const FiberDescriptor f = fiber(z);
    const double dist = std::abs(w - f.center);
    if (dist == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (f.degenerate) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log(dist) - radius_exponent(z.value);
}

double DiscFibration::transversal_level() const {
    return skewcyl::transversal_level(A_);
}

double transversal_level(double A) {
    return 1.0 + std::exp(LogPotential::upper_bound_on_disc() + 1.0 + A) + 1.0;
}

}  // namespace skewcyl
