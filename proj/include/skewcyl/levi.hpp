// Levi form of ρ(z, w) = u(z) + |z|² + A - log|w - ψ(z)| on the boundary of K.
//
// The complement M' is the sublevel set {ρ < 0}. At a boundary point
// w = ψ(z) + r(z)e^{iθ} the complex tangent direction is t = (1, -ρ_z/ρ_w)
// and pseudoconvexity of M' near that point is the condition
//
//   H = ρ_{zz̄} + 2 Re(ρ_{zw̄} conj(t_w)) + ρ_{ww̄} |t_w|² >= 0.
//
// Closed forms (ψ real, ζ = w - ψ(z)):
//   ρ_z   = u_z + z̄ + (ψ_z / 2)(1/ζ + 1/ζ̄)
//   ρ_w   = -1 / (2ζ)
//   ρ_zz̄  = 1 + (ψ_zz̄ / 2)(1/ζ + 1/ζ̄) + (ψ_z ψ_z̄ / 2)(1/ζ² + 1/ζ̄²)
//   ρ_zw̄  = -ψ_z / (2 ζ̄²)
//   ρ_ww̄  = 0
#pragma once

#include <functional>
#include <vector>

#include "skewcyl/brset.hpp"

namespace skewcyl {

struct ComplexHessian {
    double f_zzbar = 0.0;
    double f_wwbar = 0.0;
    Complex f_zwbar{0.0, 0.0};
};

struct RhoDerivs {
    Complex rho_z;
    Complex rho_w;
    ComplexHessian hessian;
};

/// Half-width of the exclusion strips around [1/3, 1/2] and [-1/2, -1/3].
inline constexpr double kDefaultExclusion = 1.0 / 48.0;

/// Distance from z to the segments [1/3, 1/2] ∪ [-1/2, -1/3] carrying E±.
double distance_to_singular_strips(Complex z);

/// Boundary point of the fiber over z at angle theta.
Complex boundary_point(const DiscFibration& k, Complex z, double theta);

RhoDerivs rho_derivs_closed(const DiscFibration& k, Complex z, double theta,
                            double epsilon = kDefaultExclusion);

double tangent_levi(const RhoDerivs& d);
double tangent_levi(const DiscFibration& k, Complex z, double theta,
                    double epsilon = kDefaultExclusion);

// Finite-difference Wirtinger calculus on real fields of (z, w).

using Field = std::function<double(Complex z, Complex w)>;

struct FdSteps {
    double z;
    double w;
    FdSteps(double h) : z(h), w(h) {}
    FdSteps(double hz, double hw) : z(hz), w(hw) {}
};

struct WirtingerFd {
    Complex f_z;
    Complex f_w;
    ComplexHessian hessian;
};

/// Central differences at a single step size.
WirtingerFd wirtinger_fd(const Field& f, Complex z, Complex w, FdSteps steps);

struct WirtingerFdEstimate {
    WirtingerFd value;    // Richardson combination of steps h and h/2
    double error = 0.0;   // max entrywise |F(h/2) - F(h)| / 3
};

WirtingerFdEstimate wirtinger_fd_richardson(const Field& f, Complex z, Complex w, FdSteps steps);

/// ρ as a plain field, for the oracle.
Field rho_field(const DiscFibration& k);

// Grid certification.

struct LeviGridSpec {
    int nx = 64;
    int ny = 64;
    int theta_count = 32;
    double epsilon = kDefaultExclusion;
    /// Points with |Re z| below this are skipped; 0 covers the disc.
    double min_abs_re = 0.0;
};

struct LeviReport {
    double A = 0.0;
    LeviGridSpec grid;
    double min_H = 0.0;
    Complex argmin_z;
    double argmin_theta = 0.0;
    double margin_requested = 0.0;
    bool certified = false;
    long points_evaluated = 0;
    long points_excluded = 0;
};

struct LeviSample {
    Complex z;
    double theta;
    double H;
};

/// z-nodes of the grid inside the disc, in row-major order.
std::vector<Complex> grid_nodes(const LeviGridSpec& grid);

LeviReport certify(const DiscFibration& k, const LeviGridSpec& grid, double margin, int workers = 1);
LeviReport certify(double A, const LeviGridSpec& grid, double margin, int workers = 1);

/// Every evaluated (z, θ, H) in grid order; excluded nodes are omitted.
std::vector<LeviSample> levi_grid_dump(const DiscFibration& k, const LeviGridSpec& grid);

struct MinAResult {
    double A_star = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    /// (A, certified, min_H) for every probe, in probe order.
    struct Probe {
        double A;
        bool certified;
        double min_H;
    };
    std::vector<Probe> history;
};

/// Bisection to width 1e-2 for the smallest A certified on the grid.
MinAResult find_min_A(double lo, double hi, const LeviGridSpec& grid, double margin,
                      int workers = 1);

}  // namespace skewcyl
