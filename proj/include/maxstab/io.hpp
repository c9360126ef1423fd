#pragma once

#include <json.hpp>
#include <string>

#include "maxstab/analyzer.hpp"
#include "maxstab/cmatrix.hpp"
#include "maxstab/cpoly.hpp"
#include "maxstab/fdtd.hpp"
#include "maxstab/schemes.hpp"
#include "maxstab/verify.hpp"

namespace maxstab {

using json = nlohmann::ordered_json;

/// First line of every stability-map CSV.
inline constexpr const char* kMapCsvHeader = "# maxstab-stability-map v1";
/// First line of every energy CSV.
inline constexpr const char* kEnergyCsvHeader = "# maxstab-energy v1";

json to_json(cplx z);
/// Accepts [re, im] or a bare number.
cplx cplx_from_json(const json& j);

/// Ascending powers as [re, im] pairs.
json to_json(const CPoly& p);
CPoly poly_from_json(const json& j);

/// Nested rows of [re, im] pairs.
json to_json(const CMatrix& g);
CMatrix matrix_from_json(const json& j);

struct SchemeRecord {
  SchemeId id;
  SchemeParams sp;
  Mode mode;
};

/// Flat object with keys model, dim, polarization, lambda_x, lambda_y, delta, omega, eps_s_rel, xi_x, xi_y.
json to_json(const SchemeRecord& r);
/// Missing keys keep their defaults; unknown keys and bad values throw std::domain_error.
SchemeRecord scheme_from_json(const json& j);

json to_json(const PolyClass& c);
json to_json(const RootsResult& r);
json to_json(const StabilityVerdict& v);
json to_json(const ConditionResult& c);
json to_json(const StabilityMap& m);
json to_json(const ThresholdResult& t);
json to_json(const RunReport& r);
json to_json(const EmpiricalThreshold& t);
json to_json(const VerifyReport& r);

/// One row per cell: axis values, verdict kind, reason, worst root modulus, witness q, closed-form verdict.
std::string to_csv(const StabilityMap& m);
/// Columns step, energy.
std::string energy_csv(const RunReport& r);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace maxstab
