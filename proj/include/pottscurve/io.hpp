#pragma once

#include "pottscurve/criticality.hpp"
#include "pottscurve/curve.hpp"
#include "pottscurve/oracle.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace pottscurve::io {

// Insertion-ordered so that output is byte-stable across runs.
using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// Reals are written as decimal strings carrying every working digit.
Json real_json(const Real& x);
Json complex_json(const Complex& z);  // {"re": ..., "im": ...}
Json rational_json(const Rational& q); // {"num": ..., "den": ...}

Json to_json(const CurveSolution& s);
Json to_json(const CriticalPoint& cp, const std::vector<InternalCheck>& checks);
Json to_json(const MomentSeries& m);
Json to_json(const ComparisonReport& r);
Json spectrum_json(const std::vector<SpectrumPoint>& spectrum);
Json boundary_json(const std::vector<BoundaryLabel>& table);
Json density_json(const SpectralDensity& d);

Real real_from_json(const Json& j);
Rational rational_from_json(const Json& j);
// Inverse of to_json for the parametrization and couplings; derived data is
// recomputed by the caller if needed.
RationalParametrization parametrization_from_json(const Json& j);
MomentSeries moment_series_from_json(const Json& j);

// CSV writers: header line, comma separated, '.' as decimal point
// regardless of the global locale.
void write_density_csv(std::ostream& out, const SpectralDensity& d);
void write_moment_series_csv(std::ostream& out, const std::vector<MomentSeries>& series);
void write_key_value_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows);

std::string kind_name(MomentKind k);
MomentKind kind_from_name(const std::string& name);

} // namespace pottscurve::io
