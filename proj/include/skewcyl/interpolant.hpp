// A C² step ψ(z) = h(Re z) equal to 1 left of the plateau edge -s and 0 right of +s.
#pragma once

#include "skewcyl/rational.hpp"

namespace skewcyl {

struct PsiDerivs {
    Complex psi_z;
    Complex psi_zbar;
    double psi_zzbar;
};

struct C2Bounds {
    double sup_first;
    double sup_second;
};

class SmoothStep {
public:
    /// Plateau edge s must satisfy 0 < s < 1/3 so the strips around E± sit in the plateaus.
    explicit SmoothStep(Rational plateau_edge = Rational(7, 24));

    Rational plateau_edge() const { return edge_; }
    double edge() const { return s_; }

    /// Profile h and its derivatives on the real line.
    double h(double x) const;
    double h1(double x) const;
    double h2(double x) const;

    double eval(Complex z) const { return h(z.real()); }
    PsiDerivs derivs(Complex z) const;
    C2Bounds c2_bounds() const;

private:
    Rational edge_;
    double s_;
};

}  // namespace skewcyl
