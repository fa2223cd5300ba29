// Shared helpers for the test suites: deterministic sampling and independent oracles.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace skewcyl::testing {

using Complex = std::complex<double>;

inline std::mt19937_64 rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

/// Uniform point in the disc of the given radius.
inline Complex random_in_disc(std::mt19937_64& g, double radius = 1.0) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        Complex z(u(g), u(g));
        if (std::abs(z) < radius) {
            return z;
        }
    }
}

/// Partial sum of the potential written out independently of the library.
inline double brute_potential(Complex z, int N) {
    double s = std::log(std::abs(z - 0.5)) + std::log(std::abs(z + 0.5));
    for (int n = 1; n <= N; ++n) {
        const double a = n / (2.0 * n + 1.0);
        s += std::pow(2.0, -n) * (std::log(std::abs(z - a)) + std::log(std::abs(z + a)));
    }
    return s;
}

/// Distance from z to the segments [1/3, 1/2] and [-1/2, -1/3].
inline double strip_distance(Complex z) {
    auto seg = [&](double lo, double hi) {
        const double x = std::fmin(std::fmax(z.real(), lo), hi);
        return std::abs(z - Complex(x, 0.0));
    };
    return std::fmin(seg(1.0 / 3.0, 0.5), seg(-0.5, -1.0 / 3.0));
}

/// Taylor-coefficient jet (value and derivatives 1..3) of P/Q from coefficient lists.
struct RationalFn {
    std::vector<Complex> p;  // ascending powers
    std::vector<Complex> q;

    static Complex eval_poly(const std::vector<Complex>& c, Complex z) {
        Complex v(0.0, 0.0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            v = v * z + *it;
        }
        return v;
    }
    Complex operator()(Complex z) const { return eval_poly(p, z) / eval_poly(q, z); }

    /// Taylor coefficients of a polynomial about z0, orders 0..3.
    static std::vector<Complex> taylor(const std::vector<Complex>& c, Complex z0) {
        std::vector<Complex> out(4, Complex(0.0, 0.0));
        for (int k = 0; k < 4; ++k) {
            // k-th derivative / k!
            Complex v(0.0, 0.0);
            for (std::size_t j = static_cast<std::size_t>(k); j < c.size(); ++j) {
                double binom = 1.0;
                for (int t = 0; t < k; ++t) {
                    binom = binom * static_cast<double>(j - static_cast<std::size_t>(t)) / (t + 1);
                }
                v += c[j] * binom * std::pow(z0, static_cast<double>(j - static_cast<std::size_t>(k)));
            }
            out[static_cast<std::size_t>(k)] = v;
        }
        return out;
    }

    /// (f, f', f'', f''') at z0 via power-series division.
    std::array<Complex, 4> derivatives(Complex z0) const {
        const auto pt = taylor(p, z0);
        const auto qt = taylor(q, z0);
        std::array<Complex, 4> f{};
        for (int k = 0; k < 4; ++k) {
            Complex acc = pt[static_cast<std::size_t>(k)];
            for (int j = 1; j <= k; ++j) {
                acc -= qt[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - j)];
            }
            f[static_cast<std::size_t>(k)] = acc / qt[0];
        }
        return {f[0], f[1], 2.0 * f[2], 6.0 * f[3]};
    }
};

using Poly = std::vector<Complex>;

inline Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

inline Poly power(const Poly& a, int k) {
    Poly out{Complex(1.0, 0.0)};
    for (int i = 0; i < k; ++i) {
        out = mul(out, a);
    }
    return out;
}

// Homogenized substitution: sum_k c_k R^k T^(d-k).
inline Poly substitute(const Poly& c, const Poly& r, const Poly& t, int d) {
    Poly out{Complex(0.0, 0.0)};
    for (std::size_t k = 0; k < c.size(); ++k) {
        out = add(out, mul(Poly{c[k]}, mul(power(r, static_cast<int>(k)), power(t, d - static_cast<int>(k)))));
    }
    return out;
}

// f ∘ g as an explicit quotient of polynomials.
inline RationalFn compose_rational(const RationalFn& f, const RationalFn& g) {
    const int d = static_cast<int>(std::max(f.p.size(), f.q.size())) - 1;
    return {substitute(f.p, g.p, g.q, d), substitute(f.q, g.p, g.q, d)};
}

inline Complex random_complex(std::mt19937_64& g, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(g), u(g)};
}

inline RationalFn random_rational(std::mt19937_64& g, int degree) {
    RationalFn f;
    for (int k = 0; k <= degree; ++k) {
        f.p.push_back(random_complex(g));
        f.q.push_back(random_complex(g, 0.3));
    }
    f.q[0] = Complex(1.0, 0.0);
    return f;
}

/// S from the value and first three derivatives.
inline Complex schwarzian_oracle(const std::array<Complex, 4>& d) {
    const Complex r = d[2] / d[1];
    return d[3] / d[1] - 1.5 * r * r;
}

}  // namespace skewcyl::testing
