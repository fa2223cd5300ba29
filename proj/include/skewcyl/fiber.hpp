// Conformal charts on fibers of the complement and continuation of log w along paths.
//
// A non-degenerate fiber ℂ \ closed disc(c, r) is sent to the punctured unit disc by
// m(w) = r / (w - c); a degenerate fiber ℂ \ {c} is sent to ℂ \ {0} by m(w) = 1/(w - c).
// The universal cover is parametrized by ζ with e^ζ = m; deck transformations are
// ζ ↦ ζ + 2πik.
#pragma once

#include <vector>

#include "skewcyl/brset.hpp"

namespace skewcyl {

class FiberChart {
public:
    explicit FiberChart(FiberDescriptor descriptor);

    const FiberDescriptor& descriptor() const { return d_; }

    Complex to_punctured_disc(Complex w) const;
    Complex from_punctured_disc(Complex m) const;

    /// Covering coordinate ζ = log m(w) on the principal branch.
    Complex covering_coordinate(Complex w) const { return std::log(to_punctured_disc(w)); }
    static Complex deck(Complex zeta, int k = 1);

    /// True when w lies in the fiber, i.e. strictly outside the obstacle.
    bool in_fiber(Complex w) const;

private:
    FiberDescriptor d_;
};

struct PathPolyline {
    std::vector<Complex> vertices;

    bool closed(double tol = 1e-12) const;
    PathPolyline concat(const PathPolyline& next) const;

    /// Regular polygon approximating a circle, `turns` times around; first == last.
    static PathPolyline circle(Complex center, double radius, int turns = 1, int segments_per_turn = 64,
                               double start_angle = 0.0);
    /// Axis-aligned square, counterclockwise, closed.
    static PathPolyline square(Complex center, double half_side);
};

struct LogContinuation {
    Complex final_value;
    Complex increment;
};

/// Analytic continuation of log along the path from a branch at the first vertex.
LogContinuation continue_log(const PathPolyline& path, Complex initial_branch);

struct MonodromyResult {
    Complex increment;
    int winding;
};

/// Log-monodromy of a closed loop around w = 0.
MonodromyResult monodromy(const PathPolyline& loop);

/// Winding number of a closed loop about a point (via log continuation of w - p).
int winding_number(const PathPolyline& loop, Complex point);

/// How the chart ln w behaves on a fiber along a loop.
struct LogChartVerdict {
    MonodromyResult log_monodromy;   // around w = 0
    int obstacle_winding;            // around the obstacle center
    bool loop_in_fiber;              // every vertex and segment avoids the obstacle
    bool contractible_in_fiber;      // obstacle_winding == 0
    /// A fiber-contractible loop with nonzero log monodromy: ln w has a branch point in the fiber.
    bool branch_point_witness;
};

LogChartVerdict analyze_log_chart(const FiberChart& chart, const PathPolyline& loop);

}  // namespace skewcyl
