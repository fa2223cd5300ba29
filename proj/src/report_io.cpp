#include "skewcyl/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace skewcyl {

json real_to_json(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

double real_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        if (s == "nan") {
            return std::numeric_limits<double>::quiet_NaN();
        }
        throw std::invalid_argument("not a real number: " + s);
    }
    return j.get<double>();
}

json complex_to_json(Complex z) {
    return json::array({real_to_json(z.real()), real_to_json(z.imag())});
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex numbers are encoded as [re, im]");
    }
    return {real_from_json(j[0]), real_from_json(j[1])};
}

json to_json(const FiberDescriptor& f) {
    return {{"schema_version", kSchemaVersion},
            {"z", complex_to_json(f.z)},
            {"center", complex_to_json(f.center)},
            {"radius", real_to_json(f.radius)},
            {"degenerate", f.degenerate}};
}

FiberDescriptor fiber_from_json(const json& j) {
    return {complex_from_json(j.at("z")), complex_from_json(j.at("center")), real_from_json(j.at("radius")),
            j.at("degenerate").get<bool>()};
}

json to_json(const LeviReport& r) {
    return {{"schema_version", kSchemaVersion},
            {"A", real_to_json(r.A)},
            {"grid",
             {{"nx", r.grid.nx},
              {"ny", r.grid.ny},
              {"theta_count", r.grid.theta_count},
              {"epsilon", r.grid.epsilon},
              {"min_abs_re", r.grid.min_abs_re}}},
            {"min_H", real_to_json(r.min_H)},
            {"argmin", {{"z", complex_to_json(r.argmin_z)}, {"theta", r.argmin_theta}}},
            {"margin_requested", real_to_json(r.margin_requested)},
            {"certified", r.certified},
            {"points_evaluated", r.points_evaluated},
            {"points_excluded", r.points_excluded}};
}

LeviReport levi_report_from_json(const json& j) {
    LeviReport r;
    r.A = real_from_json(j.at("A"));
    const json& g = j.at("grid");
    r.grid.nx = g.at("nx").get<int>();
    r.grid.ny = g.at("ny").get<int>();
    r.grid.theta_count = g.at("theta_count").get<int>();
    r.grid.epsilon = g.at("epsilon").get<double>();
    r.grid.min_abs_re = g.at("min_abs_re").get<double>();
    r.min_H = real_from_json(j.at("min_H"));
    r.argmin_z = complex_from_json(j.at("argmin").at("z"));
    r.argmin_theta = j.at("argmin").at("theta").get<double>();
    r.margin_requested = real_from_json(j.at("margin_requested"));
    r.certified = j.at("certified").get<bool>();
    r.points_evaluated = j.at("points_evaluated").get<long>();
    r.points_excluded = j.at("points_excluded").get<long>();
    return r;
}

json to_json(const MonodromyResult& m) {
    return {{"schema_version", kSchemaVersion}, {"increment", complex_to_json(m.increment)}, {"winding", m.winding}};
}

MonodromyResult monodromy_from_json(const json& j) {
    return {complex_from_json(j.at("increment")), j.at("winding").get<int>()};
}

json to_json(const CertificateReport& r) {
    json s = json::array();
    for (const auto& v : r.s_values) {
        s.push_back({{"z", complex_to_json(v.z)}, {"s", complex_to_json(v.value)}});
    }
    json prop = json::array();
    for (const auto& b : r.propagated) {
        prop.push_back({{"z", complex_to_json(b.z)}, {"bound", real_to_json(b.bound)}});
    }
    json coeffs = json::array();
    for (Complex c : r.mobius_coefficients) {
        coeffs.push_back(complex_to_json(c));
    }
    json defects = json::array();
    for (double d : r.monodromy_defect.defects) {
        defects.push_back(real_to_json(d));
    }
    json euclidean = json::array();
    for (double d : r.monodromy_defect.euclidean) {
        euclidean.push_back(real_to_json(d));
    }
    return {{"schema_version", kSchemaVersion},
            {"family", r.family},
            {"A", real_to_json(r.A)},
            {"N", r.N},
            {"basepoint_zeta", complex_to_json(r.basepoint_zeta)},
            {"s_values", s},
            {"max_abs_s_plus", real_to_json(r.max_abs_s_plus)},
            {"min_abs_s_plus", real_to_json(r.min_abs_s_plus)},
            {"s_max_alt_section", real_to_json(r.s_max_alt_section)},
            {"holomorphy_residual", real_to_json(r.holomorphy_residual)},
            {"sup_bound_estimate", real_to_json(r.sup_bound_estimate)},
            {"sup_bound_is_grid_estimate", r.sup_bound_is_grid_estimate},
            {"propagated", prop},
            {"mobius_coefficients", coeffs},
            {"mobius_match_residual", real_to_json(r.mobius_match_residual)},
            {"monodromy_defect", {{"defects", defects},
              {"max_defect", real_to_json(r.monodromy_defect.max_defect)},
              {"euclidean", euclidean}}},
            {"log_branch_witness", r.log_branch_witness},
            {"tol_zero", real_to_json(r.tol_zero)},
            {"tol_cr", real_to_json(r.tol_cr)},
            {"verdict", to_string(r.verdict)}};
}

CertificateReport certificate_from_json(const json& j) {
    CertificateReport r;
    r.family = j.at("family").get<std::string>();
    r.A = real_from_json(j.at("A"));
    r.N = j.at("N").get<int>();
    r.basepoint_zeta = complex_from_json(j.at("basepoint_zeta"));
    for (const auto& v : j.at("s_values")) {
        r.s_values.push_back({complex_from_json(v.at("z")), complex_from_json(v.at("s"))});
    }
    r.max_abs_s_plus = real_from_json(j.at("max_abs_s_plus"));
    r.min_abs_s_plus = real_from_json(j.at("min_abs_s_plus"));
    r.s_max_alt_section = real_from_json(j.at("s_max_alt_section"));
    r.holomorphy_residual = real_from_json(j.at("holomorphy_residual"));
    r.sup_bound_estimate = real_from_json(j.at("sup_bound_estimate"));
    r.sup_bound_is_grid_estimate = j.at("sup_bound_is_grid_estimate").get<bool>();
    for (const auto& b : j.at("propagated")) {
        r.propagated.push_back({complex_from_json(b.at("z")), real_from_json(b.at("bound"))});
    }
    const json& coeffs = j.at("mobius_coefficients");
    for (std::size_t k = 0; k < r.mobius_coefficients.size(); ++k) {
        r.mobius_coefficients[k] = complex_from_json(coeffs.at(k));
    }
    r.mobius_match_residual = real_from_json(j.at("mobius_match_residual"));
    const json& md = j.at("monodromy_defect");
    for (std::size_t k = 0; k < r.monodromy_defect.defects.size(); ++k) {
        r.monodromy_defect.defects[k] = real_from_json(md.at("defects").at(k));
        r.monodromy_defect.euclidean[k] = real_from_json(md.at("euclidean").at(k));
    }
    r.monodromy_defect.max_defect = real_from_json(md.at("max_defect"));
    r.log_branch_witness = j.at("log_branch_witness").get<bool>();
    r.tol_zero = real_from_json(j.at("tol_zero"));
    r.tol_cr = real_from_json(j.at("tol_cr"));
    const auto v = verdict_from_string(j.at("verdict").get<std::string>());
    if (!v) {
        throw std::invalid_argument("unknown verdict");
    }
    r.verdict = *v;
    return r;
}

PathPolyline path_from_json(const json& j) {
    if (!j.is_array()) {
        throw std::invalid_argument("paths are JSON arrays of [re, im] pairs");
    }
    PathPolyline p;
    for (const auto& v : j) {
        p.vertices.push_back(complex_from_json(v));
    }
    return p;
}

void write_fiber_csv(std::ostream& os, const std::vector<FiberDescriptor>& rows) {
    os << kFiberCsvHeader << '\n' << std::setprecision(17);
    for (const auto& f : rows) {
        os << f.z.real() << ',' << f.z.imag() << ',' << f.center.real() << ',' << f.center.imag() << ','
           << f.radius << ',' << (f.degenerate ? 1 : 0) << '\n';
    }
}

void write_levi_csv(std::ostream& os, const std::vector<LeviSample>& rows) {
    os << kLeviCsvHeader << '\n' << std::setprecision(17);
    for (const auto& s : rows) {
        os << s.z.real() << ',' << s.z.imag() << ',' << s.theta << ',' << s.H << '\n';
    }
}

}  // namespace skewcyl
