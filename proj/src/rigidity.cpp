#include "skewcyl/rigidity.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skewcyl/brset.hpp"
#include "skewcyl/fiber.hpp"
#include "skewcyl/potential.hpp"

namespace skewcyl {

namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

void require_in_disc(Complex z) {
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("rigidity: z must lie in the open unit disc");
    }
}

double blaschke_factor(Complex z, double a) {
    return std::abs((z - a) / (1.0 - a * z));
}

void require_finite(Complex v, const std::string& family) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::runtime_error("family '" + family + "' is not evaluable on a required fiber");
    }
}

Jet3 family_jet(const CandidateFamily& fam, Complex z, Complex zeta) {
    if (fam.jet) {
        if (auto j = fam.jet(z, zeta)) {
            return *j;
        }
    }
    return jet_fd([&](Complex t) { return fam.eval(z, t); }, zeta, kDefaultFdStep).jet;
}

Complex family_schwarzian(const CandidateFamily& fam, Complex z, Complex zeta) {
    if (fam.jet) {
        if (auto j = fam.jet(z, zeta)) {
            return schwarzian(*j);
        }
    }
    return schwarzian_fd([&](Complex t) { return fam.eval(z, t); }, zeta).value;
}

template <class G>
Complex dbar_fd(G&& g, Complex z, double h) {
    const Complex dx = g(z + Complex(h, 0.0)) - g(z - Complex(h, 0.0));
    const Complex dy = g(z + Complex(0.0, h)) - g(z - Complex(0.0, h));
    return (dx + Complex(0.0, 1.0) * dy) / (4.0 * h);
}

Complex log_exp_minus_one(Complex zeta) {
    return std::log(std::exp(zeta) - 1.0);
}

}  // namespace

double blaschke_bound(Complex z, int N) {
    require_in_disc(z);
    if (N < 0) {
        throw std::invalid_argument("blaschke_bound: N must be nonnegative");
    }
    double b = blaschke_factor(z, 0.5);
    for (int n = 1; n <= N; ++n) {
        b *= blaschke_factor(z, plus_center(n));
    }
    return b;
}

double vanishing_propagation(double sup_bound, int N, Complex z) {
    if (!(sup_bound >= 0.0)) {
        throw std::invalid_argument("vanishing_propagation: sup bound must be nonnegative");
    }
    return sup_bound * blaschke_bound(z, N);
}

bool poly_identity_check(int degree) {
    using boost::multiprecision::cpp_rational;
    if (degree < 0 || degree > 50) {
        throw std::invalid_argument("poly_identity_check: degree must lie in [0, 50]");
    }
    const int n = degree + 1;
    // Rows: nodes a_1..a_n; columns: monomials 1, x, .., x^degree.
    std::vector<std::vector<cpp_rational>> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const cpp_rational a(i + 1, 2 * (i + 1) + 1);
        cpp_rational p = 1;
        for (int j = 0; j < n; ++j) {
            m[i].push_back(p);
            p *= a;
        }
    }
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < n; ++r) {
            if (m[r][col] == 0) {
                continue;
            }
            const cpp_rational f = m[r][col] / m[rank][col];
            for (int c = col; c < n; ++c) {
                m[r][c] -= f * m[rank][c];
            }
        }
        ++rank;
    }
    return rank == n;
}

PeriodicityDefect mobius_periodicity_defect(const Mobius& m) {
    const std::array<Complex, 3> pts = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 1.0)};
    PeriodicityDefect out{};
    out.max_defect = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Complex shifted = m(pts[k] + kTwoPiI);
        const Complex base = m(pts[k]);
        out.defects[k] = chordal_distance(shifted, base);
        if (is_infinite(shifted) || is_infinite(base)) {
            out.euclidean[k] = is_infinite(shifted) && is_infinite(base) ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            out.euclidean[k] = std::abs(shifted - base);
        }
        out.max_defect = std::max(out.max_defect, out.defects[k]);
    }
    return out;
}

CandidateFamily moebius_in_log_family() {
    CandidateFamily f;
    f.name = "moebius-in-log";
    auto q = [](Complex z) { return 2.0 + z; };
    f.eval = [q](Complex z, Complex zeta) { return (zeta + q(z)) / (zeta - q(z)); };
    f.jet = [q](Complex z, Complex zeta) -> std::optional<Jet3> {
        return Mobius(1.0, q(z), 1.0, -q(z)).jet(zeta);
    };
    return f;
}

CandidateFamily branch_adapted_family() {
    CandidateFamily f;
    f.name = "branch-adapted";
    const Mobius outer(1.0, 2.0, 1.0, -2.0);
    f.eval = [outer](Complex, Complex zeta) { return outer(log_exp_minus_one(zeta)); };
    f.jet = [outer](Complex, Complex zeta) -> std::optional<Jet3> {
        const Complex e = std::exp(zeta);
        const Complex em1 = e - 1.0;
        const Jet3 inner{zeta, std::log(em1), e / em1, -e / (em1 * em1),
                         e * (e + 1.0) / (em1 * em1 * em1)};
        return compose(outer.jet(inner.f0), inner);
    };
    return f;
}

CandidateFamily perturb_conj(CandidateFamily base, double delta) {
    CandidateFamily f;
    f.name = base.name + "+conj";
    f.claimed_holomorphic_in_z = false;
    auto b_eval = base.eval;
    auto b_jet = base.jet;
    f.eval = [b_eval, delta](Complex z, Complex zeta) { return b_eval(z, zeta) + delta * std::conj(z); };
    if (b_jet) {
        f.jet = [b_jet, delta](Complex z, Complex zeta) -> std::optional<Jet3> {
            auto j = b_jet(z, zeta);
            if (j) {
                j->f0 += delta * std::conj(z);
            }
            return j;
        };
    }
    return f;
}

CandidateFamily family_by_name(const std::string& name) {
    const std::string suffix = "+conj";
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
        return perturb_conj(family_by_name(name.substr(0, name.size() - suffix.size())), 1e-3);
    }
    if (name == "moebius-in-log") {
        return moebius_in_log_family();
    }
    if (name == "branch-adapted") {
        return branch_adapted_family();
    }
    throw std::invalid_argument("unknown candidate family: " + name);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::contradiction_found:
            return "contradiction-found";
        case Verdict::schwarzian_nonvanishing_on_e_plus:
            return "schwarzian-nonvanishing-on-E+";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::optional<Verdict> verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::contradiction_found, Verdict::schwarzian_nonvanishing_on_e_plus,
                      Verdict::inconclusive}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

CertificateReport run_certificate(const CandidateFamily& family, const CertificateConfig& cfg) {
    if (!family.eval) {
        throw std::invalid_argument("run_certificate: family has no evaluator");
    }
    if (cfg.N < 1) {
        throw std::invalid_argument("run_certificate: N must be positive");
    }
    CertificateReport rep;
    rep.family = family.name;
    rep.A = cfg.A;
    rep.N = cfg.N;
    rep.tol_zero = cfg.tol_zero;
    rep.tol_cr = cfg.tol_cr;

    // Section through the transversal level w = N₀, so ζ0 = ln N₀ on every fiber.
    const Complex zeta0(std::log(transversal_level(cfg.A)), 0.0);
    rep.basepoint_zeta = zeta0;

    auto s_at = [&](Complex z, Complex zeta) {
        const Complex s = family_schwarzian(family, z, zeta);
        require_finite(s, family.name);
        return s;
    };
    auto f_at = [&](Complex z) {
        const Complex v = family.eval(z, zeta0);
        require_finite(v, family.name);
        return v;
    };

    // (1) Schwarzian in the log chart on the E₊ samples.
    std::vector<Complex> plus_samples = {Complex(0.5, 0.0)};
    for (int n = 1; n <= cfg.N; ++n) {
        plus_samples.emplace_back(plus_center(n), 0.0);
    }
    const std::vector<Complex> minus_samples = {Complex(-plus_center(1), 0.0), Complex(-plus_center(2), 0.0),
                                                Complex(-plus_center(3), 0.0)};
    rep.max_abs_s_plus = 0.0;
    rep.min_abs_s_plus = std::numeric_limits<double>::infinity();
    for (Complex z : plus_samples) {
        const Complex s = s_at(z, zeta0);
        rep.s_values.push_back({z, s});
        rep.max_abs_s_plus = std::max(rep.max_abs_s_plus, std::abs(s));
        rep.min_abs_s_plus = std::min(rep.min_abs_s_plus, std::abs(s));
        rep.s_max_alt_section = std::max(rep.s_max_alt_section, std::abs(s_at(z, zeta0 + 1.0)));
    }

    // (2) Holomorphy in z of both f on the section and s.
    const double h = cfg.fd_step_z;
    double residual = 0.0;
    auto check_point = [&](Complex z) {
        residual = std::max(residual, std::abs(dbar_fd(f_at, z, h)));
        residual = std::max(residual, std::abs(dbar_fd([&](Complex x) { return s_at(x, zeta0); }, z, h)));
    };
    for (Complex z : plus_samples) {
        check_point(z);
    }
    for (Complex z : minus_samples) {
        check_point(z);
    }
    rep.holomorphy_residual = residual;

    // (3) Propagate smallness from E₊ with a grid estimate of sup |s|.
    const bool vanishes_on_plus = rep.max_abs_s_plus <= cfg.tol_zero;
    if (vanishes_on_plus) {
        double sup = 0.0;
        for (int i = 1; i <= 10; ++i) {
            for (int k = 0; k < 10; ++k) {
                const Complex z = std::polar(0.09 * i, 2.0 * std::numbers::pi * k / 10.0);
                sup = std::max(sup, std::abs(s_at(z, zeta0)));
            }
        }
        rep.sup_bound_estimate = sup;
        for (Complex z : minus_samples) {
            rep.propagated.push_back({z, vanishing_propagation(sup, cfg.N, z)});
        }
    }

    // (4) Degree-1 match on the fiber over -1/3 and its failure to be 2πi-periodic.
    const Complex z_minus = minus_samples.front();
    const Jet3 j = family_jet(family, z_minus, zeta0);
    require_finite(j.f0, family.name);
    const Mobius m = Mobius::from_jet(j);
    rep.mobius_coefficients = {m.a(), m.b(), m.c(), m.d()};
    rep.mobius_match_residual = 0.0;
    for (Complex probe : {zeta0 + 1.0, zeta0 + Complex(0.0, 1.0)}) {
        rep.mobius_match_residual =
            std::max(rep.mobius_match_residual, chordal_distance(family.eval(z_minus, probe), m(probe)));
    }
    rep.monodromy_defect = mobius_periodicity_defect(m);

    const DiscFibration k(cfg.A);
    const FiberChart chart(k.fiber(Rational(-1, 3)));
    rep.log_branch_witness =
        analyze_log_chart(chart, PathPolyline::circle(Complex(0.0, 0.0), 0.5)).branch_point_witness;

    if (!(rep.holomorphy_residual < cfg.tol_cr)) {
        rep.verdict = Verdict::inconclusive;
    } else if (!vanishes_on_plus) {
        rep.verdict = Verdict::schwarzian_nonvanishing_on_e_plus;
    } else {
        const bool propagated_small = std::all_of(rep.propagated.begin(), rep.propagated.end(),
                                                  [&](const ZBound& b) { return b.bound <= cfg.tol_zero; });
        const bool is_mobius = rep.mobius_match_residual <= cfg.mobius_match_tol;
        const bool defect = rep.monodromy_defect.max_defect > 1e-12;
        rep.verdict = propagated_small && is_mobius && defect && rep.log_branch_witness
                          ? Verdict::contradiction_found
                          : Verdict::inconclusive;
    }
    return rep;
}

}  // namespace skewcyl
