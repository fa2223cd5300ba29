#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "skewcyl/brset.hpp"
#include "skewcyl/rigidity.hpp"
#include "test_support.hpp"

using namespace skewcyl;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

double direct_product(Complex z, int N) {
    double v = std::abs((z - 0.5) / (1.0 - 0.5 * z));
    for (int n = 1; n <= N; ++n) {
        const double a = static_cast<double>(n) / (2.0 * n + 1.0);
        v *= std::abs((z - a) / (1.0 - a * z));
    }
    return v;
}

// S of ln(e^ζ - 1) in ζ: with E = e^ζ the jets give (E - 1/2)/(E - 1)².
double branch_adapted_s(double A) {
    const double n0 = 2.0 + std::exp(4.0 * std::log(3.0) + 1.0 + A);
    return (n0 - 0.5) / ((n0 - 1.0) * (n0 - 1.0));
}

}  // namespace

TEST_CASE("blaschke_bound: examples") {
    CHECK(blaschke_bound(0.0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    for (int k = 1; k <= 5; ++k) {
        CHECK(blaschke_bound(static_cast<double>(k) / (2.0 * k + 1.0), 10) < 1e-15);
    }
    CHECK(blaschke_bound(0.5, 0) == 0.0);
    const double b20 = blaschke_bound(0.0, 20);
    CHECK(b20 > std::pow(3.0, -21));
    CHECK(b20 < std::pow(2.0, -20));
    CHECK_THROWS_AS(blaschke_bound(Complex(1.0, 0.0), 3), std::domain_error);
    CHECK_THROWS_AS(blaschke_bound(0.0, -1), std::invalid_argument);
}

TEST_CASE("blaschke_bound: decay window and the direct-product oracle") {
    for (int N = 0; N <= 60; ++N) {
        const double b = blaschke_bound(0.0, N);
        CHECK(b > std::pow(3.0, -(N + 1)));
        CHECK(b <= std::pow(2.0, -N));
    }
    auto g = testing::rng(71);
    for (int i = 0; i < 200; ++i) {
        const Complex z = testing::random_in_disc(g, 0.99);
        const int N = static_cast<int>(g() % 40);
        const double b = blaschke_bound(z, N);
        CHECK(b == doctest::Approx(direct_product(z, N)).epsilon(1e-12));
        CHECK(b >= 0.0);
        CHECK(b <= 1.0);
    }
}

TEST_CASE("vanishing_propagation") {
    const Complex z(-1.0 / 3.0, 0.0);
    // Factors at -1/3 tend to 5/7, so 1e-6 is first reached at N = 38.
    CHECK(vanishing_propagation(1.0, 37, z) > 1e-6);
    CHECK(vanishing_propagation(1.0, 38, z) < 1e-6);
    CHECK(vanishing_propagation(1.0, 25, z) == doctest::Approx(direct_product(z, 25)).epsilon(1e-12));
    CHECK(vanishing_propagation(0.0, 25, z) == 0.0);
    double last = vanishing_propagation(1.0, 0, z);
    for (int N = 1; N <= 60; ++N) {
        const double b = vanishing_propagation(1.0, N, z);
        CHECK(b < last);
        last = b;
    }
    CHECK(vanishing_propagation(3.0, 10, Complex(0.2, 0.4)) ==
          doctest::Approx(3.0 * blaschke_bound(Complex(0.2, 0.4), 10)).epsilon(1e-15));
    CHECK_THROWS_AS(vanishing_propagation(-1.0, 5, z), std::invalid_argument);
}

TEST_CASE("poly_identity_check: exact for every degree up to 25") {
    for (int d = 0; d <= 25; ++d) {
        CHECK(poly_identity_check(d));
    }
    CHECK_THROWS_AS(poly_identity_check(51), std::invalid_argument);
    CHECK_THROWS_AS(poly_identity_check(-1), std::invalid_argument);
}

TEST_CASE("periodicity defect: examples") {
    const PeriodicityDefect id = mobius_periodicity_defect(Mobius::identity());
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(id.euclidean[k] == doctest::Approx(kTwoPi).epsilon(1e-14));
        CHECK(id.defects[k] > 0.0);
    }
    CHECK(id.defects[0] == doctest::Approx(2.0 * kTwoPi / std::sqrt(1.0 + kTwoPi * kTwoPi)).epsilon(1e-14));

    const PeriodicityDefect inv = mobius_periodicity_defect(Mobius(0.0, 1.0, 1.0, 0.0));
    CHECK(inv.euclidean[1] == doctest::Approx(std::abs(1.0 / (1.0 + kTwoPi * kI) - 1.0)).epsilon(1e-14));
    CHECK(std::isinf(inv.euclidean[0]));
    CHECK(inv.defects[0] == doctest::Approx(2.0 / std::sqrt(1.0 + 1.0 / (kTwoPi * kTwoPi))).epsilon(1e-14));
    CHECK(inv.max_defect > 0.0);

    // Translation cancels in the Euclidean defect; the chordal one moves with the point.
    const PeriodicityDefect shift = mobius_periodicity_defect(Mobius(1.0, 5.0, 0.0, 1.0));
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(shift.euclidean[k] == doctest::Approx(id.euclidean[k]).epsilon(1e-14));
    }
    CHECK(shift.max_defect > 0.0);
}

TEST_CASE("periodicity defect is positive for random Mobius maps") {
    auto g = testing::rng(73);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 1000) {
        const Complex a(u(g), u(g)), b(u(g), u(g)), c(u(g), u(g)), d(u(g), u(g));
        if (std::abs(a * d - b * c) < 1e-3) {
            continue;
        }
        ++done;
        CHECK(mobius_periodicity_defect(Mobius(a, b, c, d)).max_defect > 1e-12);
    }
}

TEST_CASE("candidate families by name") {
    CHECK(family_by_name("moebius-in-log").name == "moebius-in-log");
    CHECK(family_by_name("branch-adapted").name == "branch-adapted");
    CHECK_FALSE(family_by_name("branch-adapted+conj").claimed_holomorphic_in_z);
    CHECK_THROWS_AS(family_by_name("no-such-family"), std::invalid_argument);
    for (Verdict v : {Verdict::contradiction_found, Verdict::schwarzian_nonvanishing_on_e_plus, Verdict::inconclusive}) {
        CHECK(verdict_from_string(to_string(v)) == v);
    }
    CHECK_FALSE(verdict_from_string("maybe").has_value());
}

TEST_CASE("certificate: Mobius-in-log family gives the contradiction") {
    const CertificateReport r = run_certificate(moebius_in_log_family());
    CHECK(r.verdict == Verdict::contradiction_found);
    CHECK(r.N == 25);
    CHECK(r.s_values.size() == 26);
    CHECK(r.max_abs_s_plus <= r.tol_zero);
    CHECK(r.holomorphy_residual < r.tol_cr);
    CHECK(r.monodromy_defect.max_defect > 1e-12);
    CHECK(r.mobius_match_residual < 1e-8);
    CHECK(r.log_branch_witness);
    CHECK(r.sup_bound_is_grid_estimate);
    REQUIRE_FALSE(r.propagated.empty());
    for (const ZBound& b : r.propagated) {
        CHECK(b.bound <= r.tol_zero);
    }
    CHECK(std::abs(r.basepoint_zeta - std::log(transversal_level(10.0))) < 1e-12);
}

TEST_CASE("certificate: branch-adapted family has nonvanishing s on E+") {
    const CertificateReport r = run_certificate(branch_adapted_family());
    CHECK(r.verdict == Verdict::schwarzian_nonvanishing_on_e_plus);
    const double expected = branch_adapted_s(10.0);
    CHECK(r.min_abs_s_plus == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.max_abs_s_plus == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.min_abs_s_plus > r.tol_zero);
    for (const ZValue& s : r.s_values) {
        CHECK(std::abs(s.value - expected) < 1e-10 * expected);
    }
}

TEST_CASE("certificate: conj-z perturbations are inconclusive") {
    for (const char* name : {"moebius-in-log+conj", "branch-adapted+conj"}) {
        const CertificateReport r = run_certificate(family_by_name(name));
        CHECK(r.verdict == Verdict::inconclusive);
        CHECK(r.holomorphy_residual >= r.tol_cr);
        CHECK(r.holomorphy_residual == doctest::Approx(1e-3).epsilon(1e-3));
    }
}

TEST_CASE("certificate: verdicts never contradict their evidence") {
    for (const char* name : {"moebius-in-log", "branch-adapted", "moebius-in-log+conj", "branch-adapted+conj"}) {
        const CertificateReport r = run_certificate(family_by_name(name));
        if (r.verdict == Verdict::contradiction_found) {
            CHECK(r.max_abs_s_plus <= r.tol_zero);
            CHECK(r.monodromy_defect.max_defect > 1e-12);
            CHECK(r.holomorphy_residual < r.tol_cr);
        }
        if (r.holomorphy_residual >= r.tol_cr) {
            CHECK(r.verdict == Verdict::inconclusive);
        }
    }
}

TEST_CASE("certificate: other truncations and levels") {
    CertificateConfig cfg;
    cfg.N = 10;
    cfg.A = 5.0;
    const CertificateReport r = run_certificate(branch_adapted_family(), cfg);
    CHECK(r.s_values.size() == 11);
    CHECK(r.min_abs_s_plus == doctest::Approx(branch_adapted_s(5.0)).epsilon(1e-10));
    cfg.N = 0;
    CHECK_THROWS_AS(run_certificate(branch_adapted_family(), cfg), std::invalid_argument);
    CHECK_THROWS_AS(run_certificate(CandidateFamily{}), std::invalid_argument);
}
