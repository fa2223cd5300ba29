// The obstacle K = {(w, z) : |w - ψ(z)| <= exp(u(z) + |z|² + A)} fibered over the unit disc.
#pragma once

#include <functional>

#include "skewcyl/interpolant.hpp"
#include "skewcyl/potential.hpp"

namespace skewcyl {

inline constexpr double kDefaultA = 10.0;

struct FiberDescriptor {
    Complex z;
    Complex center;
    double radius;
    bool degenerate;
};

class DiscFibration {
public:
    explicit DiscFibration(double A = kDefaultA, LogPotential potential = LogPotential(),
                           SmoothStep step = SmoothStep());

    double A() const { return A_; }
    const LogPotential& potential() const { return potential_; }
    const SmoothStep& step() const { return step_; }

    /// φ(z) = u(z) + |z|² + A; -infinity over retained singular points.
    double radius_exponent(Complex z) const;

    /// Fiber over z. Exact rational points of E± give the degenerate fibers {0} and {1}.
    FiberDescriptor fiber(const BasePoint& z) const;

    bool contains(Complex w, const BasePoint& z) const;

    /// log|w - ψ(z)| - φ(z); positive exactly on the complement M'.
    double defining_value(Complex w, const BasePoint& z) const;

    /// A level w = N₀ that clears K over the whole disc.
    double transversal_level() const;

private:
    double A_;
    LogPotential potential_;
    SmoothStep step_;
};

/// Free-function form of the transversal level: 2 + exp(4 ln 3 + 1 + A).
double transversal_level(double A);

/// Single-point fibers w = c(z) over the disc; the default c is complex conjugation.
struct GraphObstacle {
    std::function<Complex(Complex)> center_fn = [](Complex z) { return std::conj(z); };

    FiberDescriptor fiber(Complex z) const { return {z, center_fn(z), 0.0, true}; }
};

}  // namespace skewcyl
