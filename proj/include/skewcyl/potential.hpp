// The harmonic potential
//
//   u(z) = ln|z - 1/2| + ln|z + 1/2|
//        + sum_{n>=1} 2^-n (ln|z - n/(2n+1)| + ln|z + n/(2n+1)|)
//
// evaluated by partial sums with an explicit bound on the omitted tail.
#pragma once

#include <vector>

#include "skewcyl/rational.hpp"

namespace skewcyl {

enum class Side { plus, minus };

struct SingularTerm {
    double center;
    double weight;
};

struct ExactSingularTerm {
    Rational center;
    Rational weight;
};

/// ±1/2 with weight 1, then (±n/(2n+1), 2^-n) for n = 1..count.
std::vector<SingularTerm> singular_points(Side side, int count);

/// Same list with exact rational centers and weights; count <= 62.
std::vector<ExactSingularTerm> singular_points_exact(Side side, int count);

/// n/(2n+1) as a double.
double plus_center(int n);

/// True when q is 1/2 or n/(2n+1) for some n >= 1 (resp. the negatives).
bool in_plus_set(const Rational& q);
bool in_minus_set(const Rational& q);

struct PotentialValue {
    /// -infinity exactly at a retained singular point.
    double value;
    /// Majorizes |u(z) - value|; +infinity when z sits on a tail segment.
    double tail_bound;
};

inline constexpr int kDefaultTruncation = 53;

class LogPotential {
public:
    explicit LogPotential(int truncation = kDefaultTruncation);

    int truncation() const { return truncation_; }

    PotentialValue eval(Complex z) const;

    /// ∂u/∂z = ½ Σ weight / (z - center).
    Complex eval_z(Complex z) const;

    /// 2^-N · 2 · max(|ln d|, ln 3), d = distance to the tail segments.
    double tail_bound(Complex z) const;

    /// Upper bound for u on the unit disc: total weight 4 times ln 3.
    static double upper_bound_on_disc();

    /// Distance from z to the nearest retained center of either family.
    double distance_to_centers(Complex z) const;

private:
    int truncation_;
    std::vector<SingularTerm> terms_;  // plus family only; minus is the reflection
};

}  // namespace skewcyl
