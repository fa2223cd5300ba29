#include "skewcyl/schwarzian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewcyl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonzero_derivative(const Jet3& jet) {
    if (jet.f1 == Complex(0.0, 0.0)) {
        throw std::domain_error("schwarzian: f' vanishes (critical point)");
    }
}

}  // namespace

bool is_infinite(Complex z) {
    return std::isinf(z.real()) || std::isinf(z.imag());
}

double chordal_distance(Complex a, Complex b) {
    const bool ia = is_infinite(a);
    const bool ib = is_infinite(b);
    if (ia && ib) {
        return 0.0;
    }
    if (ia) {
        return 2.0 / std::sqrt(1.0 + std::norm(b));
    }
    if (ib) {
        return 2.0 / std::sqrt(1.0 + std::norm(a));
    }
    return 2.0 * std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

Mobius::Mobius(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (det == Complex(0.0, 0.0) || !std::isfinite(std::abs(det))) {
        throw std::invalid_argument("Mobius: degenerate coefficients");
    }
    const Complex s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

Mobius Mobius::through_points(Complex z1, Complex z2, Complex z3, Complex w1, Complex w2, Complex w3) {
    // Cross-ratio maps sending the triple to (0, 1, ∞).
    auto to_standard = [](Complex p1, Complex p2, Complex p3) {
        return Mobius(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1));
    };
    return to_standard(w1, w2, w3).inverse() * to_standard(z1, z2, z3);
}

Mobius Mobius::from_jet(const Jet3& jet) {
    require_nonzero_derivative(jet);
    // f0 + f1 t / (1 - k t), t = ζ - p, k = f2 / (2 f1)
    const Complex k = jet.f2 / (2.0 * jet.f1);
    const Complex a = jet.f1 - jet.f0 * k;
    return Mobius(a, jet.f0 - a * jet.p, -k, 1.0 + k * jet.p);
}

Complex Mobius::operator()(Complex z) const {
    if (is_infinite(z)) {
        return c_ == Complex(0.0, 0.0) ? Complex(kInf, 0.0) : a_ / c_;
    }
    const Complex den = c_ * z + d_;
    if (den == Complex(0.0, 0.0)) {
        return {kInf, 0.0};
    }
    return (a_ * z + b_) / den;
}

Jet3 Mobius::jet(Complex p) const {
    const Complex den = c_ * p + d_;
    if (den == Complex(0.0, 0.0)) {
        throw std::domain_error("Mobius::jet: p is the pole");
    }
    // det = 1, so f' = 1/den², f'' = -2c/den³, f''' = 6c²/den⁴
    const Complex inv = 1.0 / den;
    const Complex inv2 = inv * inv;
    return {p, (a_ * p + b_) * inv, inv2, -2.0 * c_ * inv2 * inv, 6.0 * c_ * c_ * inv2 * inv2};
}

Mobius Mobius::inverse() const {
    return {d_, -b_, -c_, a_};
}

Mobius operator*(const Mobius& f, const Mobius& g) {
    return {f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_, f.c_ * g.a_ + f.d_ * g.c_,
            f.c_ * g.b_ + f.d_ * g.d_};
}

Jet3 exp_jet(Complex p) {
    const Complex e = std::exp(p);
    return {p, e, e, e, e};
}

Jet3 log_jet(Complex p) {
    if (p == Complex(0.0, 0.0)) {
        throw std::domain_error("log_jet: p = 0");
    }
    const Complex inv = 1.0 / p;
    return {p, std::log(p), inv, -inv * inv, 2.0 * inv * inv * inv};
}

Jet3 identity_jet(Complex p) {
    return {p, p, 1.0, 0.0, 0.0};
}

Jet3 compose(const Jet3& outer, const Jet3& inner) {
    const Complex g1 = inner.f1;
    const Complex g2 = inner.f2;
    return {inner.p, outer.f0, outer.f1 * g1, outer.f2 * g1 * g1 + outer.f1 * g2,
            outer.f3 * g1 * g1 * g1 + 3.0 * outer.f2 * g1 * g2 + outer.f1 * inner.f3};
}

Complex schwarzian(const Jet3& jet) {
    require_nonzero_derivative(jet);
    const Complex r = jet.f2 / jet.f1;
    return jet.f3 / jet.f1 - 1.5 * r * r;
}

Jet3 jet_fd_single(const HoloFn& f, Complex p, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("jet_fd: step must be positive");
    }
    std::array<Complex, 7> v;  // f(p + k h), k = -3..3
    for (int k = -3; k <= 3; ++k) {
        const Complex y = f(p + Complex(k * h, 0.0));
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
            throw std::domain_error("jet_fd: stencil leaves the domain");
        }
        v[static_cast<std::size_t>(k + 3)] = y;
    }
    auto at = [&](int k) { return v[static_cast<std::size_t>(k + 3)]; };
    Jet3 j;
    j.p = p;
    j.f0 = at(0);
    j.f1 = (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
    j.f2 = (-at(-2) + 16.0 * at(-1) - 30.0 * at(0) + 16.0 * at(1) - at(2)) / (12.0 * h * h);
    j.f3 = (at(-3) - 8.0 * at(-2) + 13.0 * at(-1) - 13.0 * at(1) + 8.0 * at(2) - at(3)) /
           (8.0 * h * h * h);
    return j;
}

FdJet jet_fd(const HoloFn& f, Complex p, double h) {
    const Jet3 c = jet_fd_single(f, p, h);
    const Jet3 fine = jet_fd_single(f, p, h / 2.0);
    auto ex = [](Complex a, Complex b) { return b + (b - a) / 15.0; };
    FdJet out;
    out.jet = {p, fine.f0, ex(c.f1, fine.f1), ex(c.f2, fine.f2), ex(c.f3, fine.f3)};
    out.error = std::max({std::abs(fine.f1 - c.f1), std::abs(fine.f2 - c.f2), std::abs(fine.f3 - c.f3)}) / 15.0;
    return out;
}

FdSchwarzian schwarzian_fd(const HoloFn& f, Complex p, double h) {
    const Jet3 j1 = jet_fd_single(f, p, h);
    const Jet3 j2 = jet_fd_single(f, p, h / 2.0);
    const Jet3 j4 = jet_fd_single(f, p, h / 4.0);
    const Complex s1 = schwarzian(j1);
    const Complex s2 = schwarzian(j2);
    const Complex s4 = schwarzian(j4);
    const Complex value = s2 + (s2 - s1) / 15.0;
    const double error = std::abs(s2 - s1) / 15.0;
    // Rounding in the third-derivative stencil at h/4 sets the noise floor.
    const double scale = std::max(std::abs(j4.f0), 1.0);
    const double quarter = h / 4.0;
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale /
                         (std::abs(j4.f1) * quarter * quarter * quarter);
    if (std::abs(s4 - value) > 10.0 * error + floor) {
        throw std::runtime_error("schwarzian_fd: Richardson consistency check failed");
    }
    return {value, std::max(error, floor)};
}

Complex cocycle(Complex sf_at_gp, const Jet3& g_jet, Complex sg_at_p) {
    require_nonzero_derivative(g_jet);
    return sf_at_gp * g_jet.f1 * g_jet.f1 + sg_at_p;
}

Complex schwarzian_in_log_chart(const Jet3& f_jet_in_w) {
    const Complex w0 = f_jet_in_w.p;
    if (w0 == Complex(0.0, 0.0)) {
        throw std::domain_error("schwarzian_in_log_chart: w0 = 0");
    }
    return w0 * w0 * schwarzian(f_jet_in_w) - 0.5;
}

}  // namespace skewcyl
