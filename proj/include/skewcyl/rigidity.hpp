// Identity-theorem quantification on E₊, the Möbius periodicity obstruction on E₋
// fibers, and the end-to-end nonuniformizability certificate.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skewcyl/schwarzian.hpp"

namespace skewcyl {

/// ∏_{n<=N} |(z - a_n)/(1 - a_n z)| · |(z - 1/2)/(1 - z/2)|, a_n = n/(2n+1).
double blaschke_bound(Complex z, int N);

/// sup_bound · blaschke_bound(z, N).
double vanishing_propagation(double sup_bound, int N, Complex z);

/// True iff the only polynomial of degree <= d vanishing at a_1..a_{d+1} is zero
/// (exact rational elimination).
bool poly_identity_check(int degree);

struct PeriodicityDefect {
    std::array<double, 3> defects;  // chordal, at ζ = 0, 1, i
    double max_defect;
    std::array<double, 3> euclidean;  // |M(ζ + 2πi) - M(ζ)|; infinite when exactly one side is ∞
};

/// Distance between M(ζ + 2πi) and M(ζ) at three canonical points.
PeriodicityDefect mobius_periodicity_defect(const Mobius& m);

struct CandidateFamily {
    std::string name;
    bool claimed_holomorphic_in_z = true;
    /// f(z, ζ) on the fiber over z in the log-chart coordinate ζ.
    std::function<Complex(Complex z, Complex zeta)> eval;
    /// Analytic ζ-jet when available; finite differences are used otherwise.
    std::function<std::optional<Jet3>(Complex z, Complex zeta)> jet;
};

/// f(z, ζ) = (ζ + q(z)) / (ζ - q(z)), q(z) = 2 + z.
CandidateFamily moebius_in_log_family();
/// f(z, ζ) = M0(ln(e^ζ - 1)), M0(g) = (g + 2)/(g - 2): single-valued on the E₋ fibers.
CandidateFamily branch_adapted_family();
/// f(z, ζ) + δ · conj(z).
CandidateFamily perturb_conj(CandidateFamily base, double delta);
/// Canned families by name: "moebius-in-log", "branch-adapted",
/// and "<name>+conj" for the 1e-3 conj-z perturbation.
CandidateFamily family_by_name(const std::string& name);

enum class Verdict { contradiction_found, schwarzian_nonvanishing_on_e_plus, inconclusive };

std::string to_string(Verdict v);
std::optional<Verdict> verdict_from_string(const std::string& s);

struct CertificateConfig {
    double A = 10.0;
    int N = 25;
    double tol_zero = 1e-9;
    double tol_cr = 1e-6;
    double fd_step_z = 1e-4;
    double mobius_match_tol = 1e-8;
};

struct ZValue {
    Complex z;
    Complex value;
};

struct ZBound {
    Complex z;
    double bound;
};

struct CertificateReport {
    std::string family;
    double A = 0.0;
    int N = 0;
    Complex basepoint_zeta;
    std::vector<ZValue> s_values;           // on 1/2, a_1..a_N
    double max_abs_s_plus = 0.0;
    double min_abs_s_plus = 0.0;
    double s_max_alt_section = 0.0;         // same samples at ζ0 + 1
    double holomorphy_residual = 0.0;
    double sup_bound_estimate = 0.0;        // grid estimate, not a proven supremum
    bool sup_bound_is_grid_estimate = true;
    std::vector<ZBound> propagated;         // E₋ samples
    std::array<Complex, 4> mobius_coefficients{};
    double mobius_match_residual = 0.0;
    PeriodicityDefect monodromy_defect{};
    bool log_branch_witness = false;        // contractible loop around w = 0 on the z = -1/3 fiber
    double tol_zero = 0.0;
    double tol_cr = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

CertificateReport run_certificate(const CandidateFamily& family, const CertificateConfig& config = {});

}  // namespace skewcyl
