#include "maxstab/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxstab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::domain_error("expected a number or an [re, im] pair, got " + j.dump());
}

json to_json(const CPoly& p) {
  json a = json::array();
  for (const cplx& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

CPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw std::domain_error("polynomial must be a JSON array");
  std::vector<cplx> c;
  for (const json& e : j) c.push_back(cplx_from_json(e));
  return CPoly(std::move(c));
}

json to_json(const CMatrix& g) {
  json rows = json::array();
  for (int i = 0; i < g.n(); ++i) {
    json row = json::array();
    for (int k = 0; k < g.n(); ++k) row.push_back(to_json(g(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::domain_error("matrix must be a JSON array of rows");
  const int n = static_cast<int>(j.size());
  std::vector<cplx> e;
  for (const json& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw std::domain_error("matrix must be square");
    for (const json& v : row) e.push_back(cplx_from_json(v));
  }
  return CMatrix(n, std::move(e));
}

json to_json(const SchemeRecord& r) {
  json j;
  j["model"] = to_string(r.id.model);
  j["dim"] = r.id.dim;
  j["polarization"] = to_string(r.id.polarization);
  j["lambda_x"] = r.sp.lambda_x;
  j["lambda_y"] = r.sp.lambda_y;
  j["delta"] = r.sp.delta;
  j["omega"] = r.sp.omega;
  j["eps_s_rel"] = r.sp.eps_s_rel;
  j["xi_x"] = r.mode.xi_x;
  j["xi_y"] = r.mode.xi_y;
  return j;
}

namespace {

double number_field(const json& j, const char* key) {
  if (!j.is_number()) throw std::domain_error(std::string("key '") + key + "' must be a number");
  return j.get<double>();
}

}  // namespace

SchemeRecord scheme_from_json(const json& j) {
  if (!j.is_object()) throw std::domain_error("scheme record must be a JSON object");
  SchemeRecord r;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "model") {
      const auto m = v.is_string() ? parse_model(v.get<std::string>()) : std::nullopt;
      if (!m) throw std::domain_error("unknown model " + v.dump());
      r.id.model = *m;
    } else if (k == "dim") {
      if (!v.is_number_integer()) throw std::domain_error("key 'dim' must be an integer");
      r.id.dim = v.get<int>();
    } else if (k == "polarization") {
      const auto p = v.is_string() ? parse_polarization(v.get<std::string>()) : std::nullopt;
      if (!p) throw std::domain_error("unknown polarization " + v.dump());
      r.id.polarization = *p;
    } else if (k == "lambda_x") {
      r.sp.lambda_x = number_field(v, "lambda_x");
    } else if (k == "lambda_y") {
      r.sp.lambda_y = number_field(v, "lambda_y");
    } else if (k == "delta") {
      r.sp.delta = number_field(v, "delta");
    } else if (k == "omega") {
      r.sp.omega = number_field(v, "omega");
    } else if (k == "eps_s_rel") {
      r.sp.eps_s_rel = number_field(v, "eps_s_rel");
    } else if (k == "xi_x") {
      r.mode.xi_x = number_field(v, "xi_x");
    } else if (k == "xi_y") {
      r.mode.xi_y = number_field(v, "xi_y");
    } else {
      throw std::domain_error("unknown scheme key '" + k + "'");
    }
  }
  return r;
}

json to_json(const PolyClass& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["witness_root"] = c.witness_root ? to_json(*c.witness_root) : json(nullptr);
  j["witness"] = c.witness;
  json t = json::array();
  for (const ChainStep& s : c.trace) {
    json e;
    e["depth"] = s.depth;
    e["degree"] = s.degree;
    e["abs_phi0"] = s.abs_phi0;
    e["abs_phis0"] = s.abs_phis0;
    e["action"] = to_string(s.action);
    t.push_back(std::move(e));
  }
  j["trace"] = std::move(t);
  return j;
}

json to_json(const RootsResult& r) {
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["max_residual"] = r.max_residual;
  json cl = json::array();
  for (const RootCluster& c : r.clusters) {
    json e;
    e["value"] = to_json(c.value);
    e["modulus"] = std::abs(c.value);
    e["multiplicity"] = c.multiplicity;
    cl.push_back(std::move(e));
  }
  j["clusters"] = std::move(cl);
  j["message"] = r.message;
  return j;
}

json to_json(const StabilityVerdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  j["reason"] = to_string(v.reason);
  j["summary"] = v.summary();
  j["worst_root_modulus"] = v.worst_root_modulus;
  j["defective_eigenvalue"] = v.defective_eigenvalue ? to_json(*v.defective_eigenvalue) : json(nullptr);
  j["q"] = v.q;
  j["xi_x"] = v.mode.xi_x;
  j["xi_y"] = v.mode.xi_y;
  j["detail"] = v.detail;
  return j;
}

json to_json(const ConditionResult& c) {
  json j;
  j["row"] = c.row.name();
  j["verdict"] = to_string(c.verdict);
  j["condition_holds"] = c.condition_holds;
  j["binding"] = c.binding;
  return j;
}

json to_json(const StabilityMap& m) {
  json j;
  j["scheme"] = to_json(SchemeRecord{m.id, m.base, Mode{}});
  json axes = json::array();
  for (const Axis& a : m.axes) {
    json e;
    e["name"] = to_string(a.param);
    e["values"] = a.values;
    axes.push_back(std::move(e));
  }
  j["axes"] = std::move(axes);
  json cells = json::array();
  for (const MapCell& c : m.cells) {
    json e;
    e["coords"] = c.coords;
    e["verdict"] = to_json(c.verdict);
    e["closed_form"] = to_json(c.closed_form);
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  json tr = json::array();
  for (const Transition& t : m.transitions) {
    json e;
    e["axis"] = to_string(m.axes[t.axis].param);
    e["lo"] = t.lo;
    e["hi"] = t.hi;
    e["coords_lo"] = m.cells[t.cell_lo].coords;
    e["kind_lo"] = to_string(m.cells[t.cell_lo].verdict.kind);
    e["kind_hi"] = to_string(m.cells[t.cell_hi].verdict.kind);
    tr.push_back(std::move(e));
  }
  j["transitions"] = std::move(tr);
  return j;
}

json to_json(const ThresholdResult& t) {
  json j;
  j["value"] = t.value;
  j["lo"] = t.lo;
  j["hi"] = t.hi;
  j["stable_below"] = t.stable_below;
  j["evaluations"] = t.evaluations;
  return j;
}

json to_json(const RunReport& r) {
  json j;
  j["scheme"] = to_json(SchemeRecord{r.id, r.sp, Mode{}});
  j["J"] = r.options.J;
  j["steps"] = r.options.steps;
  if (r.options.init.kind == RunInit::Kind::Noise) {
    j["init"] = "noise";
    j["seed"] = r.options.init.seed;
  } else {
    j["init"] = "mode";
    j["k"] = r.options.init.k;
  }
  j["steps_done"] = r.steps_done;
  j["aborted"] = r.aborted;
  j["growth"] = r.growth;
  j["verdict"] = to_string(r.verdict);
  j["energy_initial"] = r.energy.empty() ? 0.0 : r.energy.front();
  j["energy_final"] = r.energy.empty() ? 0.0 : r.energy.back();
  j["energy"] = r.energy;
  return j;
}

json to_json(const EmpiricalThreshold& t) {
  json j;
  j["value"] = t.value;
  j["lo"] = t.lo;
  j["hi"] = t.hi;
  j["growing_above"] = t.growing_above;
  j["runs"] = t.runs;
  return j;
}

json to_json(const VerifyReport& r) {
  json j;
  j["all_pass"] = r.all_pass();
  json rows = json::array();
  for (const RowReport& row : r.rows) {
    json e;
    e["row"] = row.row.name();
    e["pass"] = row.pass();
    json in = json::array();
    for (const InteriorStats& s : row.interior) {
      json g;
      g["geometry"] = s.geometry;
      g["points"] = s.points;
      g["agree"] = s.agree;
      g["mismatches"] = s.mismatches;
      g["indeterminate"] = s.indeterminate;
      in.push_back(std::move(g));
    }
    e["interior"] = std::move(in);
    e["boundary_points"] = row.boundary_points;
    e["boundary_mismatches"] = row.boundary_mismatches;
    e["exterior_points"] = row.exterior_points;
    e["exterior_unstable"] = row.exterior_unstable;
    e["exterior_indeterminate"] = row.exterior_indeterminate;
    e["failures"] = row.failures;
    e["notes"] = row.notes;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string to_csv(const StabilityMap& m) {
  std::ostringstream os;
  os << kMapCsvHeader << "\n";
  for (const Axis& a : m.axes) os << to_string(a.param) << ",";
  os << "kind,reason,worst_root_modulus,witness_q,closed_form\n";
  for (const MapCell& c : m.cells) {
    for (double v : c.coords) os << format_number(v) << ",";
    os << to_string(c.verdict.kind) << "," << to_string(c.verdict.reason) << ","
       << format_number(c.verdict.worst_root_modulus) << "," << format_number(c.verdict.q) << ","
       << to_string(c.closed_form.verdict) << "\n";
  }
  return os.str();
}

std::string energy_csv(const RunReport& r) {
  std::ostringstream os;
  os << kEnergyCsvHeader << "\nstep,energy\n";
  for (std::size_t n = 0; n < r.energy.size(); ++n) os << n << "," << format_number(r.energy[n]) << "\n";
  return os.str();
}

}  // namespace maxstab
