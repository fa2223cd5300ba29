#include <cmath>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "levi_oracle.hpp"
#include "skewcyl/levi.hpp"
#include "skewcyl/report_io.hpp"
#include "test_support.hpp"

using namespace skewcyl;

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::json golden() {
    std::ifstream in(SKEWCYL_GOLDEN_DIR "/levi_golden.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("rho derivatives: plateau point") {
    const DiscFibration k;
    for (double theta : {0.0, 1.0, 2.5, 4.0}) {
        const RhoDerivs d = rho_derivs_closed(k, {0.45, 0.2}, theta);
        CHECK(d.hessian.f_zwbar == Complex(0.0, 0.0));
        CHECK(d.hessian.f_zzbar == 1.0);
        CHECK(d.hessian.f_wwbar == 0.0);
        CHECK(tangent_levi(d) == 1.0);
    }
    CHECK(tangent_levi(k, {-0.6, -0.5}, 0.3) == 1.0);
}

TEST_CASE("rho derivatives: errors") {
    const DiscFibration k;
    CHECK_THROWS_AS(rho_derivs_closed(k, 0.4, 0.0), std::domain_error);           // inside a strip
    CHECK_THROWS_AS(rho_derivs_closed(k, {0.4, 0.01}, 0.0), std::domain_error);   // within epsilon
    CHECK_THROWS_AS(rho_derivs_closed(k, Complex(0.9, 0.9), 0.0), std::domain_error);
    CHECK_THROWS_AS(rho_derivs_closed(k, Rational(1, 3).to_double(), 0.0, 0.0), std::domain_error);
}

TEST_CASE("wirtinger_fd on exact fields") {
    const WirtingerFd sq = wirtinger_fd([](Complex z, Complex) { return std::norm(z); }, {0.3, -0.2}, 1.0, 1e-3);
    CHECK(std::abs(sq.hessian.f_zzbar - 1.0) < 1e-8);
    CHECK(std::abs(sq.hessian.f_wwbar) < 1e-8);
    CHECK(std::abs(sq.hessian.f_zwbar) < 1e-8);
    CHECK(std::abs(sq.f_z - Complex(0.3, 0.2)) < 1e-8);  // ∂|z|²/∂z = z̄

    const WirtingerFd lg = wirtinger_fd([](Complex, Complex w) { return std::log(std::abs(w)); }, 0.0, 2.0, 1e-4);
    CHECK(std::abs(lg.hessian.f_wwbar) < 1e-8);
    CHECK(std::abs(lg.f_w - 0.25) < 1e-6);  // 1/(2w)

    const WirtingerFd mixed =
        wirtinger_fd([](Complex z, Complex w) { return (z * std::conj(w)).real(); }, {0.1, 0.4}, {-0.3, 0.2}, 1e-3);
    CHECK(std::abs(mixed.hessian.f_zwbar - 0.5) < 1e-8);
    CHECK(std::abs(mixed.hessian.f_zzbar) < 1e-8);

    CHECK_THROWS_AS(wirtinger_fd([](Complex, Complex w) { return std::log(std::abs(w)); }, 0.0, 1e-3, 1e-3),
                    std::domain_error);
    CHECK_THROWS_AS(wirtinger_fd([](Complex, Complex) { return 0.0; }, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("rho derivatives: closed forms agree with the finite-difference oracle") {
    const DiscFibration k(10.0);
    auto g = testing::rng(21);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    double worst_grad = 0.0;
    double worst_hess = 0.0;
    int used = 0;
    while (used < 1000) {
        const Complex z = testing::random_in_disc(g, 0.97);
        if (testing::strip_distance(z) < kDefaultExclusion) {
            continue;
        }
        ++used;
        const auto cmp = testing::compare_with_fd(k, z, angle(g));
        worst_grad = std::max(worst_grad, cmp.gradient_rel);
        worst_hess = std::max(worst_hess, cmp.hessian_rel);
        CHECK(cmp.gradient_rel < 1e-6);
        CHECK(cmp.hessian_rel < 1e-6);
        CHECK(std::abs(cmp.H_closed - cmp.H_fd) < 1e-5);
    }
    MESSAGE("worst relative errors: gradient " << worst_grad << ", hessian " << worst_hess);
}

TEST_CASE("rho derivatives: f_wwbar vanishes identically") {
    const DiscFibration k(10.0);
    auto g = testing::rng(22);
    for (int i = 0; i < 200; ++i) {
        const Complex z = testing::random_in_disc(g, 0.97);
        if (testing::strip_distance(z) < kDefaultExclusion) {
            continue;
        }
        CHECK(std::abs(rho_derivs_closed(k, z, 0.1 * i).hessian.f_wwbar) <= 1e-10);
    }
}

TEST_CASE("tangent Levi form flattens to 1 as A grows") {
    const Complex z(0.1, 0.0);
    const double h30 = tangent_levi(DiscFibration(30.0), z, 0.0);
    CHECK(std::abs(h30 - 1.0) < 1e-3);
    double previous = std::abs(h30 - 1.0);
    for (double A : {40.0, 50.0, 60.0}) {
        const double gap = std::abs(tangent_levi(DiscFibration(A), z, 0.0) - 1.0);
        CHECK(gap <= previous);
        previous = gap;
    }
}

TEST_CASE("tangent Levi form: |H(A) - 1| <= C e^{-A} in the transition region") {
    // C fitted once on these points (max of |H - 1| e^A was 86.78) and frozen with headroom.
    constexpr double C = 100.0;
    const std::array<Complex, 3> pts = {Complex(0.1, 0.0), Complex(-0.05, 0.3), Complex(0.2, -0.4)};
    for (Complex z : pts) {
        for (double theta : {0.0, kPi / 3, kPi, 5.0}) {
            double last = tangent_levi(DiscFibration(10.0), z, theta);
            for (double A : {10.0, 15.0, 20.0}) {
                const double H = tangent_levi(DiscFibration(A), z, theta);
                CHECK(std::abs(H - 1.0) <= C * std::exp(-A));
                // Monotone approach: the sign of H - 1 is fixed and |H - 1| shrinks.
                CHECK(std::abs(H - 1.0) <= std::abs(last - 1.0) + 1e-15);
                CHECK((H - 1.0) * (last - 1.0) >= 0.0);
                last = H;
            }
        }
    }
}

TEST_CASE("certify: A = 10 on the default grid") {
    const LeviGridSpec grid;
    const LeviReport r = certify(10.0, grid, 0.5, 1);
    CHECK(r.certified);
    CHECK(r.min_H >= 0.5);
    CHECK(r.min_H == golden().at("certify_A10").at("min_H").get<double>());
    CHECK(r.points_evaluated > 0);
    CHECK(r.points_excluded > 0);
}

TEST_CASE("certify: A = -20 fails") {
    const LeviReport r = certify(-20.0, LeviGridSpec{}, 0.5, 2);
    CHECK_FALSE(r.certified);
    CHECK(r.min_H < 0.0);
    CHECK(r.min_H == golden().at("certify_Am20").at("min_H").get<double>());
}

TEST_CASE("certify: plateau-only grid gives exactly 1") {
    LeviGridSpec grid;
    grid.min_abs_re = 7.0 / 24.0;
    for (double A : {-20.0, 0.0, 10.0}) {
        const LeviReport r = certify(A, grid, 0.5, 1);
        CHECK(r.min_H == 1.0);
        CHECK(r.certified);
    }
}

TEST_CASE("certify: deterministic across worker counts") {
    LeviGridSpec grid;
    grid.nx = 48;
    grid.ny = 40;
    grid.theta_count = 16;
    for (double A : {10.0, -3.0}) {
        const std::string one = to_json(certify(A, grid, 0.5, 1)).dump();
        CHECK(to_json(certify(A, grid, 0.5, 3)).dump() == one);
        CHECK(to_json(certify(A, grid, 0.5, 4)).dump() == one);
        CHECK(to_json(certify(A, grid, 0.5, 7)).dump() == one);
    }
}

TEST_CASE("certify: invalid grids") {
    LeviGridSpec grid;
    grid.epsilon = 0.05;  // strips would leave the plateaus
    CHECK_THROWS_AS(certify(10.0, grid, 0.5), std::invalid_argument);
    grid.epsilon = 0.0;
    CHECK_THROWS_AS(certify(10.0, grid, 0.5), std::invalid_argument);
    grid = LeviGridSpec{};
    grid.nx = 0;
    CHECK_THROWS_AS(certify(10.0, grid, 0.5), std::invalid_argument);
}

TEST_CASE("levi grid dump matches the certified minimum") {
    LeviGridSpec grid;
    grid.nx = 16;
    grid.ny = 16;
    grid.theta_count = 8;
    const DiscFibration k(2.0);
    const auto rows = levi_grid_dump(k, grid);
    const LeviReport r = certify(k, grid, 0.0, 1);
    double m = 1.0;
    for (const auto& s : rows) {
        m = std::min(m, s.H);
    }
    CHECK(static_cast<long>(rows.size()) == r.points_evaluated);
    CHECK(m == r.min_H);
}

TEST_CASE("find_min_A: bisection on the default grid") {
    const LeviGridSpec grid;
    const MinAResult res = find_min_A(-30.0, 30.0, grid, 0.1, 2);
    CHECK(res.A_star > -30.0);
    CHECK(res.A_star < 30.0);
    CHECK(res.hi - res.lo <= 1e-2);
    CHECK(res.A_star == golden().at("find_min_A").at("A_star").get<double>());
    CHECK(certify(res.A_star, grid, 0.1).certified);
    CHECK(certify(res.A_star + 1.0, grid, 0.1).certified);
    CHECK_FALSE(certify(res.A_star - 1.0, grid, 0.1).certified);
    CHECK_FALSE(certify(res.lo, grid, 0.1).certified);

    CHECK_THROWS_AS(find_min_A(10.0, 30.0, grid, 0.1), std::invalid_argument);   // lo already certified
    CHECK_THROWS_AS(find_min_A(-30.0, -20.0, grid, 0.1), std::invalid_argument); // hi fails
    CHECK_THROWS_AS(find_min_A(5.0, 5.0, grid, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(find_min_A(-30.0, 30.0, grid, 1.5), std::invalid_argument);
}
