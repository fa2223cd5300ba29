// Schwarzian derivative on 3-jets, Möbius maps and the change to the ln w chart.
#pragma once

#include <functional>

#include "skewcyl/rational.hpp"

namespace skewcyl {

/// Value and first three derivatives of a holomorphic function at p.
struct Jet3 {
    Complex p;
    Complex f0;
    Complex f1;
    Complex f2;
    Complex f3;
};

bool is_infinite(Complex z);
/// Chordal distance on the Riemann sphere; infinite arguments stand for ∞.
double chordal_distance(Complex a, Complex b);

class Mobius {
public:
    /// (a z + b) / (c z + d); rescaled to determinant 1. Throws when ad - bc = 0.
    Mobius(Complex a, Complex b, Complex c, Complex d);

    static Mobius identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// The unique Möbius map sending z_k to w_k (all finite, z_k distinct, w_k distinct).
    static Mobius through_points(Complex z1, Complex z2, Complex z3, Complex w1, Complex w2, Complex w3);
    /// The unique Möbius map with the given value, first and second derivative at jet.p.
    static Mobius from_jet(const Jet3& jet);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    /// Returns an infinite value at the pole.
    Complex operator()(Complex z) const;
    Jet3 jet(Complex p) const;
    Mobius inverse() const;
    friend Mobius operator*(const Mobius& f, const Mobius& g);  // f ∘ g

private:
    Complex a_, b_, c_, d_;
};

Jet3 exp_jet(Complex p);
Jet3 log_jet(Complex p);
Jet3 identity_jet(Complex p);
/// Jet of f ∘ g at g.p, where outer is the jet of f at g(p).
Jet3 compose(const Jet3& outer, const Jet3& inner);

/// S f = f'''/f' - (3/2)(f''/f')².
Complex schwarzian(const Jet3& jet);

using HoloFn = std::function<Complex(Complex)>;

struct FdJet {
    Jet3 jet;
    double error;
};

/// Derivatives from 4th-order central stencils along the real direction.
Jet3 jet_fd_single(const HoloFn& f, Complex p, double step);
/// Richardson-combined jet from steps h and h/2.
FdJet jet_fd(const HoloFn& f, Complex p, double step);

struct FdSchwarzian {
    Complex value;
    double error;
};

inline constexpr double kDefaultFdStep = 0.05;

/// Schwarzian from finite-difference jets at h, h/2 and h/4; throws when the
/// h/4 value strays from the extrapolation by more than 10× the error estimate.
FdSchwarzian schwarzian_fd(const HoloFn& f, Complex p, double step = kDefaultFdStep);

/// (S f ∘ g)(g')² + S g at p.
Complex cocycle(Complex sf_at_gp, const Jet3& g_jet, Complex sg_at_p);

/// Schwarzian of F ∘ exp at ζ0 = ln w0 from the w-jet of F at w0: w0² S F(w0) - 1/2.
Complex schwarzian_in_log_chart(const Jet3& f_jet_in_w);

}  // namespace skewcyl
