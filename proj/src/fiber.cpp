#include "skewcyl/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skewcyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxArgStep = std::numbers::pi / 2.0;
constexpr int kMaxDepth = 60;

double segment_distance(Complex a, Complex b, Complex p) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) {
        return std::abs(p - a);
    }
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// Principal log of b/a, subdividing [a, b] until every argument step is below π/2.
Complex segment_log_increment(Complex a, Complex b, int depth) {
    const Complex ratio = b / a;
    if (std::abs(std::arg(ratio)) < kMaxArgStep) {
        return std::log(ratio);
    }
    if (depth >= kMaxDepth) {
        throw std::domain_error("continue_log: subdivision limit reached");
    }
    const Complex mid = 0.5 * (a + b);
    return segment_log_increment(a, mid, depth + 1) + segment_log_increment(mid, b, depth + 1);
}

}  // namespace

FiberChart::FiberChart(FiberDescriptor descriptor) : d_(descriptor) {
    if (!(d_.radius >= 0.0) || !std::isfinite(d_.radius)) {
        throw std::invalid_argument("FiberChart: invalid radius");
    }
}

bool FiberChart::in_fiber(Complex w) const {
    const double dist = std::abs(w - d_.center);
    return d_.degenerate ? dist > 0.0 : dist > d_.radius;
}

Complex FiberChart::to_punctured_disc(Complex w) const {
    if (!in_fiber(w)) {
        throw std::domain_error("to_punctured_disc: w is not in the fiber");
    }
    const double scale = d_.degenerate ? 1.0 : d_.radius;
    return scale / (w - d_.center);
}

Complex FiberChart::from_punctured_disc(Complex m) const {
    if (m == Complex(0.0, 0.0) || !std::isfinite(std::abs(m))) {
        throw std::domain_error("from_punctured_disc: m must be nonzero");
    }
    if (!d_.degenerate && !(std::abs(m) < 1.0)) {
        throw std::domain_error("from_punctured_disc: m must lie in the punctured unit disc");
    }
    const double scale = d_.degenerate ? 1.0 : d_.radius;
    return d_.center + scale / m;
}

Complex FiberChart::deck(Complex zeta, int k) {
    return zeta + Complex(0.0, kTwoPi * k);
}

bool PathPolyline::closed(double tol) const {
    if (vertices.size() < 2) {
        return false;
    }
    const double scale = std::max(1.0, std::abs(vertices.front()));
    return std::abs(vertices.back() - vertices.front()) <= tol * scale;
}

PathPolyline PathPolyline::concat(const PathPolyline& next) const {
    PathPolyline out = *this;
    auto it = next.vertices.begin();
    if (!out.vertices.empty() && it != next.vertices.end() && *it == out.vertices.back()) {
        ++it;
    }
    out.vertices.insert(out.vertices.end(), it, next.vertices.end());
    return out;
}

PathPolyline PathPolyline::circle(Complex center, double radius, int turns, int segments_per_turn,
                                  double start_angle) {
    if (!(radius > 0.0) || segments_per_turn < 3 || turns == 0) {
        throw std::invalid_argument("PathPolyline::circle: bad parameters");
    }
    const int n = std::abs(turns) * segments_per_turn;
    const double dir = turns > 0 ? 1.0 : -1.0;
    PathPolyline p;
    p.vertices.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < n; ++k) {
        p.vertices.push_back(center + std::polar(radius, start_angle + dir * kTwoPi * k / segments_per_turn));
    }
    p.vertices.push_back(p.vertices.front());
    return p;
}

PathPolyline PathPolyline::square(Complex center, double half_side) {
    const double h = half_side;
    return {{center + Complex(h, -h), center + Complex(h, h), center + Complex(-h, h),
             center + Complex(-h, -h), center + Complex(h, -h)}};
}

LogContinuation continue_log(const PathPolyline& path, Complex initial_branch) {
    const auto& v = path.vertices;
    if (v.empty()) {
        throw std::invalid_argument("continue_log: empty path");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == Complex(0.0, 0.0)) {
            throw std::domain_error("continue_log: path passes through 0");
        }
        if (i + 1 < v.size() && segment_distance(v[i], v[i + 1], Complex(0.0, 0.0)) == 0.0) {
            throw std::domain_error("continue_log: path passes through 0");
        }
    }
    if (std::abs(std::exp(initial_branch) - v.front()) > 1e-10 * std::max(1.0, std::abs(v.front()))) {
        throw std::invalid_argument("continue_log: initial branch is not a logarithm of the first vertex");
    }
    Complex inc(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        inc += segment_log_increment(v[i], v[i + 1], 0);
    }
    return {initial_branch + inc, inc};
}

MonodromyResult monodromy(const PathPolyline& loop) {
    if (!loop.closed()) {
        throw std::invalid_argument("monodromy: path is not closed");
    }
    const LogContinuation c = continue_log(loop, std::log(loop.vertices.front()));
    const int winding = static_cast<int>(std::lround(c.increment.imag() / kTwoPi));
    return {c.increment, winding};
}

int winding_number(const PathPolyline& loop, Complex point) {
    PathPolyline shifted;
    shifted.vertices.reserve(loop.vertices.size());
    for (Complex v : loop.vertices) {
        shifted.vertices.push_back(v - point);
    }
    return monodromy(shifted).winding;
}

LogChartVerdict analyze_log_chart(const FiberChart& chart, const PathPolyline& loop) {
    const FiberDescriptor& d = chart.descriptor();
    LogChartVerdict out{};
    out.log_monodromy = monodromy(loop);
    out.obstacle_winding = winding_number(loop, d.center);
    out.loop_in_fiber = true;
    const auto& v = loop.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double dist = segment_distance(v[i], v[i + 1], d.center);
        if (d.degenerate ? !(dist > 0.0) : !(dist > d.radius)) {
            out.loop_in_fiber = false;
        }
    }
    out.contractible_in_fiber = out.obstacle_winding == 0;
    out.branch_point_witness =
        out.loop_in_fiber && out.contractible_in_fiber && out.log_monodromy.winding != 0;
    return out;
}

}  // namespace skewcyl
