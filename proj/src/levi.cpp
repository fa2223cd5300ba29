#include "skewcyl/levi.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace skewcyl {

namespace {

double segment_distance(Complex z, double lo, double hi) {
    return std::abs(z - Complex(std::clamp(z.real(), lo, hi), 0.0));
}

// Everything at z that does not depend on θ.
struct BaseData {
    double radius;
    double psi;
    PsiDerivs psi_d;
    Complex u_z;
};

BaseData base_data(const DiscFibration& k, Complex z) {
    const FiberDescriptor f = k.fiber(z);
    if (f.degenerate || !(f.radius > 0.0) || !std::isfinite(f.radius)) {
        throw std::domain_error("levi: fiber over z is degenerate");
    }
    return {f.radius, f.center.real(), k.step().derivs(z), k.potential().eval_z(z)};
}

RhoDerivs assemble(const BaseData& b, Complex z, double theta) {
    const Complex zeta = std::polar(b.radius, theta);
    const Complex inv = 1.0 / zeta;
    const Complex inv_bar = std::conj(inv);
    const Complex pz = b.psi_d.psi_z;
    const Complex pzb = b.psi_d.psi_zbar;

    RhoDerivs d;
    d.rho_z = b.u_z + std::conj(z) + 0.5 * pz * (inv + inv_bar);
    d.rho_w = -0.5 * inv;
    d.hessian.f_zzbar = 1.0 + 0.5 * b.psi_d.psi_zzbar * (inv + inv_bar).real() +
                        0.5 * (pz * pzb * (inv * inv + inv_bar * inv_bar)).real();
    d.hessian.f_wwbar = 0.0;
    d.hessian.f_zwbar = -0.5 * pz * inv_bar * inv_bar;
    return d;
}

void check_exclusion(Complex z, double epsilon) {
    if (epsilon > 0.0 && distance_to_singular_strips(z) < epsilon) {
        throw std::domain_error("levi: z lies inside an exclusion strip");
    }
}

struct Best {
    double H = std::numeric_limits<double>::infinity();
    Complex z;
    double theta = 0.0;
    long evaluated = 0;
    long excluded = 0;

    // Lexicographic tie-break makes the reduction order-independent.
    bool better_than(const Best& o) const {
        return std::make_tuple(H, z.real(), z.imag(), theta) <
               std::make_tuple(o.H, o.z.real(), o.z.imag(), o.theta);
    }
    void merge(const Best& o) {
        if (o.better_than(*this)) {
            H = o.H;
            z = o.z;
            theta = o.theta;
        }
        evaluated += o.evaluated;
        excluded += o.excluded;
    }
};

void validate(const DiscFibration& k, const LeviGridSpec& g) {
    if (g.nx < 1 || g.ny < 1 || g.theta_count < 1) {
        throw std::invalid_argument("levi grid: resolutions must be positive");
    }
    if (!(g.epsilon > 0.0)) {
        throw std::invalid_argument("levi grid: epsilon must be positive");
    }
    if (g.epsilon > 1.0 / 3.0 - k.step().edge()) {
        throw std::invalid_argument("levi grid: exclusion strips must lie inside the ψ plateaus");
    }
    if (!(g.min_abs_re >= 0.0)) {
        throw std::invalid_argument("levi grid: min_abs_re must be nonnegative");
    }
}

double theta_at(const LeviGridSpec& g, int j) {
    return 2.0 * std::numbers::pi * j / g.theta_count;
}

Best scan(const DiscFibration& k, const LeviGridSpec& g, const std::vector<Complex>& nodes,
          std::size_t begin, std::size_t end) {
    Best best;
    for (std::size_t i = begin; i < end; ++i) {
        const Complex z = nodes[i];
        if (distance_to_singular_strips(z) < g.epsilon) {
            ++best.excluded;
            continue;
        }
        const BaseData b = base_data(k, z);
        for (int j = 0; j < g.theta_count; ++j) {
            const double theta = theta_at(g, j);
            Best cand;
            cand.H = tangent_levi(assemble(b, z, theta));
            cand.z = z;
            cand.theta = theta;
            if (cand.better_than(best)) {
                best.H = cand.H;
                best.z = z;
                best.theta = theta;
            }
            ++best.evaluated;
        }
    }
    return best;
}

}  // namespace

double distance_to_singular_strips(Complex z) {
    return std::min(segment_distance(z, 1.0 / 3.0, 0.5), segment_distance(z, -0.5, -1.0 / 3.0));
}

Complex boundary_point(const DiscFibration& k, Complex z, double theta) {
    const FiberDescriptor f = k.fiber(z);
    return f.center + std::polar(f.radius, theta);
}

RhoDerivs rho_derivs_closed(const DiscFibration& k, Complex z, double theta, double epsilon) {
    check_exclusion(z, epsilon);
    return assemble(base_data(k, z), z, theta);
}

double tangent_levi(const RhoDerivs& d) {
    if (d.rho_w == Complex(0.0, 0.0)) {
        throw std::domain_error("tangent_levi: rho_w vanishes");
    }
    const Complex t_w = -d.rho_z / d.rho_w;
    return d.hessian.f_zzbar + 2.0 * (d.hessian.f_zwbar * std::conj(t_w)).real() +
           d.hessian.f_wwbar * std::norm(t_w);
}

double tangent_levi(const DiscFibration& k, Complex z, double theta, double epsilon) {
    return tangent_levi(rho_derivs_closed(k, z, theta, epsilon));
}

WirtingerFd wirtinger_fd(const Field& f, Complex z, Complex w, FdSteps steps) {
    const double hz = steps.z;
    const double hw = steps.w;
    if (!(hz > 0.0) || !(hw > 0.0)) {
        throw std::invalid_argument("wirtinger_fd: steps must be positive");
    }
    // Real coordinates (x1, y1, x2, y2) = (Re z, Im z, Re w, Im w).
    const std::array<Complex, 4> dir = {Complex(hz, 0), Complex(0, hz), Complex(hw, 0), Complex(0, hw)};
    const std::array<double, 4> h = {hz, hz, hw, hw};
    auto eval = [&](int a, int sa, int b, int sb) {
        Complex zz = z;
        Complex ww = w;
        auto shift = [&](int idx, int sign) {
            if (idx < 2) {
                zz += static_cast<double>(sign) * dir[idx];
            } else if (idx < 4) {
                ww += static_cast<double>(sign) * dir[idx];
            }
        };
        shift(a, sa);
        shift(b, sb);
        const double v = f(zz, ww);
        if (!std::isfinite(v)) {
            throw std::domain_error("wirtinger_fd: stencil touches a singularity");
        }
        return v;
    };
    constexpr int none = 4;
    const double f0 = eval(none, 0, none, 0);

    std::array<double, 4> d1{};
    std::array<std::array<double, 4>, 4> d2{};
    for (int a = 0; a < 4; ++a) {
        const double fp = eval(a, 1, none, 0);
        const double fm = eval(a, -1, none, 0);
        d1[a] = (fp - fm) / (2.0 * h[a]);
        d2[a][a] = (fp - 2.0 * f0 + fm) / (h[a] * h[a]);
    }
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            const double v = (eval(a, 1, b, 1) - eval(a, 1, b, -1) - eval(a, -1, b, 1) +
                              eval(a, -1, b, -1)) /
                             (4.0 * h[a] * h[b]);
            d2[a][b] = v;
            d2[b][a] = v;
        }
    }
    WirtingerFd out;
    out.f_z = 0.5 * Complex(d1[0], -d1[1]);
    out.f_w = 0.5 * Complex(d1[2], -d1[3]);
    out.hessian.f_zzbar = 0.25 * (d2[0][0] + d2[1][1]);
    out.hessian.f_wwbar = 0.25 * (d2[2][2] + d2[3][3]);
    // (∂x1 - i∂y1)(∂x2 + i∂y2) / 4
    out.hessian.f_zwbar = 0.25 * Complex(d2[0][2] + d2[1][3], d2[0][3] - d2[1][2]);
    return out;
}

WirtingerFdEstimate wirtinger_fd_richardson(const Field& f, Complex z, Complex w, FdSteps steps) {
    const WirtingerFd coarse = wirtinger_fd(f, z, w, steps);
    const WirtingerFd fine = wirtinger_fd(f, z, w, FdSteps(steps.z / 2.0, steps.w / 2.0));
    auto extrap = [](auto c, auto f) { return f + (f - c) / 3.0; };
    WirtingerFdEstimate out;
    out.value.f_z = extrap(coarse.f_z, fine.f_z);
    out.value.f_w = extrap(coarse.f_w, fine.f_w);
    out.value.hessian.f_zzbar = extrap(coarse.hessian.f_zzbar, fine.hessian.f_zzbar);
    out.value.hessian.f_wwbar = extrap(coarse.hessian.f_wwbar, fine.hessian.f_wwbar);
    out.value.hessian.f_zwbar = extrap(coarse.hessian.f_zwbar, fine.hessian.f_zwbar);
    out.error = std::max({std::abs(fine.f_z - coarse.f_z), std::abs(fine.f_w - coarse.f_w),
                          std::abs(fine.hessian.f_zzbar - coarse.hessian.f_zzbar),
                          std::abs(fine.hessian.f_wwbar - coarse.hessian.f_wwbar),
                          std::abs(fine.hessian.f_zwbar - coarse.hessian.f_zwbar)}) /
                3.0;
    return out;
}

Field rho_field(const DiscFibration& k) {
    return [k](Complex z, Complex w) {
        return k.radius_exponent(z) - std::log(std::abs(w - k.step().eval(z)));
    };
}

std::vector<Complex> grid_nodes(const LeviGridSpec& g) {
    std::vector<Complex> nodes;
    for (int j = 0; j < g.ny; ++j) {
        const double y = -1.0 + (j + 0.5) * 2.0 / g.ny;
        for (int i = 0; i < g.nx; ++i) {
            const double x = -1.0 + (i + 0.5) * 2.0 / g.nx;
            const Complex z(x, y);
            if (std::abs(z) < 1.0 && std::abs(x) >= g.min_abs_re) {
                nodes.push_back(z);
            }
        }
    }
    return nodes;
}

LeviReport certify(const DiscFibration& k, const LeviGridSpec& g, double margin, int workers) {
    validate(k, g);
    if (!std::isfinite(margin)) {
        throw std::invalid_argument("certify: margin must be finite");
    }
    const std::vector<Complex> nodes = grid_nodes(g);
    const std::size_t n_workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(nodes.size(), 1));

    std::vector<Best> partial(n_workers);
    const std::size_t chunk = (nodes.size() + n_workers - 1) / n_workers;
    if (n_workers == 1) {
        partial[0] = scan(k, g, nodes, 0, nodes.size());
    } else {
        std::vector<std::exception_ptr> errors(n_workers);
        {
            std::vector<std::jthread> threads;
            for (std::size_t t = 0; t < n_workers; ++t) {
                const std::size_t begin = std::min(nodes.size(), t * chunk);
                const std::size_t end = std::min(nodes.size(), begin + chunk);
                threads.emplace_back([&, t, begin, end] {
                    try {
                        partial[t] = scan(k, g, nodes, begin, end);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    Best best;
    for (const auto& p : partial) {
        best.merge(p);
    }

    LeviReport r;
    r.A = k.A();
    r.grid = g;
    r.margin_requested = margin;
    r.points_evaluated = best.evaluated;
    r.points_excluded = best.excluded;
    if (best.evaluated == 0) {
        // Nothing outside the strips: only the exact plateau value remains.
        r.min_H = 1.0;
    } else {
        r.min_H = best.H;
        r.argmin_z = best.z;
        r.argmin_theta = best.theta;
    }
    r.certified = r.min_H >= margin;
    return r;
}

LeviReport certify(double A, const LeviGridSpec& g, double margin, int workers) {
    return certify(DiscFibration(A), g, margin, workers);
}

std::vector<LeviSample> levi_grid_dump(const DiscFibration& k, const LeviGridSpec& g) {
    validate(k, g);
    std::vector<LeviSample> out;
    for (const Complex z : grid_nodes(g)) {
        if (distance_to_singular_strips(z) < g.epsilon) {
            continue;
        }
        const BaseData b = base_data(k, z);
        for (int j = 0; j < g.theta_count; ++j) {
            const double theta = theta_at(g, j);
            out.push_back({z, theta, tangent_levi(assemble(b, z, theta))});
        }
    }
    return out;
}

MinAResult find_min_A(double lo, double hi, const LeviGridSpec& g, double margin, int workers) {
    if (!(lo < hi)) {
        throw std::invalid_argument("find_min_A: need lo < hi");
    }
    // Per node H = 1 + αx - γx² with x = e^{-A} and γ >= 0, so {A : H >= margin}
    // is a half-line whenever margin < 1.
    if (!(margin < 1.0)) {
        throw std::invalid_argument("find_min_A: margin must be below the plateau value 1");
    }
    MinAResult res;
    auto probe = [&](double A) {
        const LeviReport r = certify(A, g, margin, workers);
        res.history.push_back({A, r.certified, r.min_H});
        return r.certified;
    };
    if (probe(lo)) {
        throw std::invalid_argument("find_min_A: certification already holds at lo");
    }
    if (!probe(hi)) {
        throw std::invalid_argument("find_min_A: certification fails at hi");
    }
    while (hi - lo > 1e-2) {
        const double mid = 0.5 * (lo + hi);
        (probe(mid) ? hi : lo) = mid;
    }
    // Certification must be monotone along every probe made.
    auto sorted = res.history;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.A < b.A; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i - 1].certified && !sorted[i].certified) {
            throw std::logic_error("find_min_A: certification is not monotone in A");
        }
    }
    res.A_star = hi;
    res.lo = lo;
    res.hi = hi;
    return res;
}

}  // namespace skewcyl
