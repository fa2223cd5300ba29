// JSON and CSV encodings of the reports. Complex numbers are [re, im] pairs and
// non-finite reals are the strings "inf" / "-inf". Every top-level object carries
// `schema_version`.
#pragma once

#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "skewcyl/fiber.hpp"
#include "skewcyl/levi.hpp"
#include "skewcyl/rigidity.hpp"

namespace skewcyl {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

json real_to_json(double x);
double real_from_json(const json& j);
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const FiberDescriptor& f);
FiberDescriptor fiber_from_json(const json& j);

json to_json(const LeviReport& r);
LeviReport levi_report_from_json(const json& j);

json to_json(const MonodromyResult& m);
MonodromyResult monodromy_from_json(const json& j);

json to_json(const CertificateReport& r);
CertificateReport certificate_from_json(const json& j);

/// JSON array of [re, im] pairs.
PathPolyline path_from_json(const json& j);

// Frozen CSV layouts.
inline constexpr const char* kFiberCsvHeader = "z_re,z_im,center_re,center_im,radius,degenerate";
inline constexpr const char* kLeviCsvHeader = "z_re,z_im,theta,H";

void write_fiber_csv(std::ostream& os, const std::vector<FiberDescriptor>& rows);
void write_levi_csv(std::ostream& os, const std::vector<LeviSample>& rows);

}  // namespace skewcyl
