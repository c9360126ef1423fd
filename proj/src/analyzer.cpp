#include "maxstab/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxstab/parallel.hpp"

namespace maxstab {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::SchurStable: return "SchurStable";
    case VerdictKind::SimpleVNStable: return "SimpleVNStable";
    case VerdictKind::PowerBoundedStable: return "PowerBoundedStable";
    case VerdictKind::Indeterminate: return "Indeterminate";
    case VerdictKind::Unstable: return "Unstable";
  }
  return "?";
}

const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::AllRootsInside: return "AllRootsInside";
    case VerdictReason::UnitRootsSimple: return "UnitRootsSimple";
    case VerdictReason::MultipleUnitRootNonDefective: return "MultipleUnitRootNonDefective";
    case VerdictReason::RootOutsideUnitDisk: return "RootOutsideUnitDisk";
    case VerdictReason::DefectiveUnitRoot: return "DefectiveUnitRoot";
    case VerdictReason::ToleranceBoundary: return "ToleranceBoundary";
  }
  return "?";
}

bool is_stable(VerdictKind k) {
  return k == VerdictKind::SchurStable || k == VerdictKind::SimpleVNStable || k == VerdictKind::PowerBoundedStable;
}

std::string StabilityVerdict::summary() const {
  switch (kind) {
    case VerdictKind::SchurStable: return "stable (Schur)";
    case VerdictKind::SimpleVNStable: return "stable (simple von Neumann)";
    case VerdictKind::PowerBoundedStable: return "stable (power-bounded)";
    case VerdictKind::Indeterminate: return "indeterminate (tolerance boundary)";
    case VerdictKind::Unstable:
      return reason == VerdictReason::DefectiveUnitRoot ? "unstable (defective unit root)"
                                                        : "unstable (root outside unit disk)";
  }
  return "?";
}

namespace {

constexpr double kRefineBand = 1e-4;
// Near-coincident unit roots grow like n until about 1/separation steps.
constexpr int kPowerHorizon = 1 << 22;

StabilityVerdict make(VerdictKind k, VerdictReason r) {
  StabilityVerdict v;
  v.kind = k;
  v.reason = r;
  return v;
}

// Roots the polynomial places near the unit circle are reread from G, whose
// eigenvalues are far better conditioned than clustered monomial-basis roots.
void refine_near_unit(const CMatrix& g, std::vector<RootCluster>& cl) {
  for (std::size_t i = 0; i < cl.size(); ++i) {
    if (cl[i].multiplicity != 1 || std::abs(std::abs(cl[i].value) - 1.0) > kRefineBand) continue;
    double gap = INFINITY;
    for (std::size_t j = 0; j < cl.size(); ++j)
      if (j != i) gap = std::min(gap, std::abs(cl[j].value - cl[i].value));
    const cplx z = refine_eigenvalue(g, cl[i].value);
    if (std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z - cl[i].value) <= std::min(kRefineBand, 0.5 * gap))
      cl[i].value = z;
  }
}

// Multiple clusters keep their centre for the rank test; only the modulus is reread from G.
bool outside_disk(const CMatrix& g, const RootCluster& c) {
  const double m = std::abs(c.value);
  if (m <= 1.0 + kUnitBand) return false;
  if (c.multiplicity == 1 || m > 1.0 + kRefineBand) return true;
  const cplx z = refine_eigenvalue(g, c.value);
  return !(std::abs(z - c.value) <= kRefineBand && std::abs(z) <= 1.0 + kUnitBand);
}

bool any_outside(const CMatrix& g, const RootsResult& rr) {
  for (const RootCluster& c : rr.clusters)
    if (outside_disk(g, c)) return true;
  return false;
}

// Steps (2)-(4) of the ladder, for polynomials the chain could not settle.
StabilityVerdict matrix_ladder(const CMatrix& g, const RootsResult& rr) {
  if (!rr.converged) {
    StabilityVerdict v = make(VerdictKind::Indeterminate, VerdictReason::ToleranceBoundary);
    v.detail = "root oracle failed: " + rr.message;
    return v;
  }
  for (const RootCluster& c : rr.clusters) {
    if (outside_disk(g, c)) {
      StabilityVerdict v = make(VerdictKind::Unstable, VerdictReason::RootOutsideUnitDisk);
      std::ostringstream os;
      os << "root " << c.value << " with modulus " << std::abs(c.value);
      v.detail = os.str();
      return v;
    }
  }
  bool multiple = false, simple = false;
  std::optional<cplx> ambiguous;
  for (const EigenReport& e : eigen_structure(g, rr.clusters, kUnitBand)) {
    if (!e.on_unit_circle) continue;
    if (e.algebraic_mult == 1) {
      simple = true;
      continue;
    }
    multiple = true;
    if (e.indeterminate) {
      if (!ambiguous) ambiguous = e.value;
      continue;
    }
    if (e.defective) {
      StabilityVerdict v = make(VerdictKind::Unstable, VerdictReason::DefectiveUnitRoot);
      v.defective_eigenvalue = e.value;
      std::ostringstream os;
      os << "eigenvalue " << e.value << ": algebraic " << e.algebraic_mult << ", geometric " << e.geometric_mult;
      v.detail = os.str();
      return v;
    }
  }
  if (ambiguous) {
    const PowerReport pr = power_bounded(g, kPowerHorizon);
    std::ostringstream os;
    os << "rank decision ambiguous at " << *ambiguous << "; powers " << to_string(pr.kind);
    StabilityVerdict v;
    switch (pr.kind) {
      case GrowthKind::Bounded:
        v = make(VerdictKind::PowerBoundedStable, VerdictReason::MultipleUnitRootNonDefective);
        break;
      case GrowthKind::LinearGrowth:
        v = make(VerdictKind::Unstable, VerdictReason::DefectiveUnitRoot);
        v.defective_eigenvalue = *ambiguous;
        break;
      case GrowthKind::ExponentialGrowth:
        v = make(VerdictKind::Unstable, VerdictReason::RootOutsideUnitDisk);
        break;
    }
    v.detail = os.str();
    return v;
  }
  if (multiple) return make(VerdictKind::PowerBoundedStable, VerdictReason::MultipleUnitRootNonDefective);
  if (simple) return make(VerdictKind::SimpleVNStable, VerdictReason::UnitRootsSimple);
  return make(VerdictKind::SchurStable, VerdictReason::AllRootsInside);
}

}  // namespace

StabilityVerdict analyze_mode(const SchemeId& id, const SchemeParams& sp, const Mode& m) {
  const CMatrix g = build_G(id, sp, m);
  const CPoly phi = char_poly(g);
  const PolyClass pc = classify(phi);
  RootsResult rr = roots(phi);
  if (rr.converged) refine_near_unit(g, rr.clusters);
  StabilityVerdict v;
  switch (pc.kind) {
    case PolyKind::Schur: v = make(VerdictKind::SchurStable, VerdictReason::AllRootsInside); break;
    case PolyKind::SimpleVonNeumann: v = make(VerdictKind::SimpleVNStable, VerdictReason::UnitRootsSimple); break;
    case PolyKind::HasRootOutside:
      // Near-unit multiple roots can tip the chain; the ladder rereads them within the band.
      if (rr.converged && !any_outside(g, rr)) {
        v = matrix_ladder(g, rr);
        break;
      }
      v = make(VerdictKind::Unstable, VerdictReason::RootOutsideUnitDisk);
      if (pc.witness_root) {
        std::ostringstream os;
        os << "root " << *pc.witness_root;
        v.detail = os.str();
      }
      break;
    case PolyKind::NonSimpleVonNeumann:
    case PolyKind::Indeterminate:
      v = matrix_ladder(g, rr);
      if (pc.kind == PolyKind::Indeterminate && !pc.witness.empty())
        v.detail = v.detail.empty() ? pc.witness : pc.witness + "; " + v.detail;
      break;
  }
  v.worst_root_modulus = rr.converged ? max_modulus(rr) : std::nan("");
  v.mode = m;
  v.q = mode_quantities(id, sp, m).q;
  return v;
}

std::vector<double> default_q_grid(const SchemeId& id, const SchemeParams& sp, int K) {
  if (K < 1) throw std::domain_error("mode grid size K must be >= 1");
  const double qm = q_max(id, sp);
  std::vector<double> qs;
  qs.reserve(static_cast<std::size_t>(K + 5));
  qs.push_back(0.0);
  for (int k = 1; k < K; ++k) qs.push_back(qm * k / K);
  qs.push_back(qm);
  std::vector<double> special{2.0, 4.0};
  if (is_lorentz(id.model) && sp.omega > 0.0) {
    special.push_back(2.0 * sp.omega / (1.0 + sp.omega));
    special.push_back(2.0 * sp.omega);
    special.push_back(4.0 * sp.omega / (2.0 + sp.omega));
  }
  for (double s : special)
    if (s > 0.0 && s <= qm) qs.push_back(s);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

std::vector<Mode> default_mode_grid(const SchemeId& id, const SchemeParams& sp, int K) {
  std::vector<Mode> modes;
  for (double q : default_q_grid(id, sp, K)) modes.push_back(mode_for_q(id, sp, q));
  if (id.dim == 2) {
    modes.push_back({M_PI, 0.0});
    modes.push_back({0.0, M_PI});
  }
  return modes;
}

bool worse(const StabilityVerdict& b, const StabilityVerdict& a) {
  if (b.kind != a.kind) return b.kind > a.kind;
  if (b.kind == VerdictKind::Unstable && std::isfinite(b.worst_root_modulus) && std::isfinite(a.worst_root_modulus))
    return b.worst_root_modulus > a.worst_root_modulus;
  return false;
}

StabilityVerdict analyze_scheme(const SchemeId& id, const SchemeParams& sp, const std::vector<Mode>& grid) {
  if (grid.empty()) throw std::domain_error("analyze_scheme: mode grid is empty");
  sp.validate(id);
  StabilityVerdict worst = analyze_mode(id, sp, grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    StabilityVerdict v = analyze_mode(id, sp, grid[i]);
    if (worse(v, worst)) worst = std::move(v);
  }
  return worst;
}

StabilityVerdict analyze_scheme(const SchemeId& id, const SchemeParams& sp) {
  sp.validate(id);
  return analyze_scheme(id, sp, default_mode_grid(id, sp));
}

// ---------------------------------------------------------------------------

const char* to_string(ParamAxis a) {
  switch (a) {
    case ParamAxis::Lambda: return "lambda";
    case ParamAxis::LambdaX: return "lambda_x";
    case ParamAxis::LambdaY: return "lambda_y";
    case ParamAxis::Delta: return "delta";
    case ParamAxis::Omega: return "omega";
    case ParamAxis::EpsS: return "eps_s";
  }
  return "?";
}

std::optional<ParamAxis> parse_axis(const std::string& s0) {
  std::string s = s0;
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "lambda") return ParamAxis::Lambda;
  if (s == "lambda_x") return ParamAxis::LambdaX;
  if (s == "lambda_y") return ParamAxis::LambdaY;
  if (s == "delta") return ParamAxis::Delta;
  if (s == "omega") return ParamAxis::Omega;
  if (s == "eps_s" || s == "eps_s_rel") return ParamAxis::EpsS;
  return std::nullopt;
}

void set_param(SchemeParams& sp, const SchemeId& id, ParamAxis a, double v) {
  switch (a) {
    case ParamAxis::Lambda:
      sp.lambda_x = v;
      if (id.dim == 2) sp.lambda_y = v;
      break;
    case ParamAxis::LambdaX: sp.lambda_x = v; break;
    case ParamAxis::LambdaY: sp.lambda_y = v; break;
    case ParamAxis::Delta: sp.delta = v; break;
    case ParamAxis::Omega: sp.omega = v; break;
    case ParamAxis::EpsS: sp.eps_s_rel = v; break;
  }
}

double get_param(const SchemeParams& sp, ParamAxis a) {
  switch (a) {
    case ParamAxis::Lambda:
    case ParamAxis::LambdaX: return sp.lambda_x;
    case ParamAxis::LambdaY: return sp.lambda_y;
    case ParamAxis::Delta: return sp.delta;
    case ParamAxis::Omega: return sp.omega;
    case ParamAxis::EpsS: return sp.eps_s_rel;
  }
  return 0.0;
}

namespace {
double parse_number(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw std::domain_error("axis '" + spec + "': cannot parse number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}
}  // namespace

Axis parse_axis_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw std::domain_error("axis '" + spec + "': expected name=a:b:step");
  const auto param = parse_axis(spec.substr(0, eq));
  if (!param) throw std::domain_error("axis '" + spec + "': unknown parameter '" + spec.substr(0, eq) + "'");
  Axis ax;
  ax.param = *param;
  const std::string rhs = spec.substr(eq + 1);
  if (rhs.empty()) return ax;
  if (rhs.find(':') != std::string::npos) {
    const auto parts = split(rhs, ':');
    if (parts.size() != 3) throw std::domain_error("axis '" + spec + "': expected a:b:step");
    const double a = parse_number(parts[0], spec), b = parse_number(parts[1], spec);
    const double step = parse_number(parts[2], spec);
    if (!(step > 0.0)) throw std::domain_error("axis '" + spec + "': step must be > 0");
    if (b < a) throw std::domain_error("axis '" + spec + "': end below start");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000000) throw std::domain_error("axis '" + spec + "': too many points");
    for (long k = 0; k < n; ++k) ax.values.push_back(a + static_cast<double>(k) * step);
  } else {
    for (const std::string& s : split(rhs, ',')) ax.values.push_back(parse_number(s, spec));
  }
  return ax;
}

StabilityMap sweep(const SchemeId& id, const SchemeParams& base, const std::vector<Axis>& axes, int K) {
  id.validate();
  StabilityMap map;
  map.id = id;
  map.base = base;
  map.axes = axes;
  if (axes.empty()) return map;
  std::size_t total = 1;
  for (const Axis& a : axes) total *= a.values.size();
  if (total == 0) return map;

  // strides for a row-major layout (last axis fastest)
  std::vector<std::size_t> stride(axes.size(), 1);
  for (std::size_t a = axes.size() - 1; a > 0; --a) stride[a - 1] = stride[a] * axes[a].values.size();

  std::vector<SchemeParams> params(total, base);
  map.cells.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    MapCell& c = map.cells[i];
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[(i / stride[a]) % axes[a].values.size()];
      c.coords.push_back(v);
      set_param(params[i], id, axes[a].param, v);
    }
    params[i].validate(id);
  }
  parallel_for(total, [&](std::size_t i) {
    map.cells[i].verdict = analyze_scheme(id, params[i], default_mode_grid(id, params[i], K));
    map.cells[i].closed_form = closed_form_condition(id, params[i]);
  });
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::size_t n = axes[a].values.size();
    for (std::size_t i = 0; i < total; ++i) {
      if ((i / stride[a]) % n + 1 >= n) continue;
      const std::size_t j = i + stride[a];
      if (is_stable(map.cells[i].verdict.kind) != is_stable(map.cells[j].verdict.kind))
        map.transitions.push_back({a, i, j, map.cells[i].coords[a], map.cells[j].coords[a]});
    }
  }
  return map;
}

ThresholdResult find_threshold(const SchemeId& id, const SchemeParams& sp, ParamAxis axis, double lo, double hi,
                               double width, int K) {
  if (!(lo < hi)) throw std::domain_error("find_threshold: bracket must satisfy lo < hi");
  if (!(width > 0.0)) throw std::domain_error("find_threshold: width must be > 0");
  ThresholdResult out;
  auto stable_at = [&](double v) {
    SchemeParams p = sp;
    set_param(p, id, axis, v);
    ++out.evaluations;
    return is_stable(analyze_scheme(id, p, default_mode_grid(id, p, K)).kind);
  };
  const bool s_lo = stable_at(lo);
  const bool s_hi = stable_at(hi);
  if (s_lo == s_hi) {
    std::ostringstream os;
    os << "find_threshold: bracket [" << lo << ", " << hi << "] does not straddle a stability change (both "
       << (s_lo ? "stable" : "unstable") << ")";
    throw std::domain_error(os.str());
  }
  out.stable_below = s_lo;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (stable_at(mid) == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace maxstab
