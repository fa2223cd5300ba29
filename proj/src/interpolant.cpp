#include "skewcyl/interpolant.hpp"

#include <cmath>
#include <stdexcept>

namespace skewcyl {

namespace {

// Unit smoothstep q(t) = 6t^5 - 15t^4 + 10t^3 and derivatives on [0, 1].
double q0(double t) { return t * t * t * (t * (6.0 * t - 15.0) + 10.0); }
double q1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double q2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

}  // namespace

SmoothStep::SmoothStep(Rational plateau_edge) : edge_(plateau_edge), s_(plateau_edge.to_double()) {
    // 0 < s < 1/3  <=>  0 < num and 3 num < den
    if (edge_.num() <= 0 || 3 * edge_.num() >= edge_.den()) {
        throw std::invalid_argument("SmoothStep: plateau edge must lie in (0, 1/3)");
    }
}

double SmoothStep::h(double x) const {
    if (x >= s_) {
        return 0.0;
    }
    if (x <= -s_) {
        return 1.0;
    }
    const double t = (x + s_) / (2.0 * s_);
    return 1.0 - q0(t);
}

double SmoothStep::h1(double x) const {
    if (x >= s_ || x <= -s_) {
        return 0.0;
    }
    const double t = (x + s_) / (2.0 * s_);
    return -q1(t) / (2.0 * s_);
}

double SmoothStep::h2(double x) const {
    if (x >= s_ || x <= -s_) {
        return 0.0;
    }
    const double t = (x + s_) / (2.0 * s_);
    return -q2(t) / (4.0 * s_ * s_);
}

PsiDerivs SmoothStep::derivs(Complex z) const {
    const double d1 = 0.5 * h1(z.real());
    return {Complex(d1, 0.0), Complex(d1, 0.0), 0.25 * h2(z.real())};
}

C2Bounds SmoothStep::c2_bounds() const {
    // max q1 = 15/8 at t = 1/2; max |q2| = 10/sqrt(3) at t = (3 ± sqrt 3)/6.
    return {(15.0 / 8.0) / (2.0 * s_), (10.0 / std::sqrt(3.0)) / (4.0 * s_ * s_)};
}

}  // namespace skewcyl
