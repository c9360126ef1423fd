#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "maxstab/analyzer.hpp"
#include "maxstab/cpoly.hpp"
#include "maxstab/fdtd.hpp"
#include "maxstab/io.hpp"
#include "maxstab/verify.hpp"

namespace maxstab::cli {

namespace {

const char* const kSubcommands[] = {"classify", "analyze", "sweep", "verify-tables", "fdtd", "threshold"};

struct SchemeOptions {
  std::string model;
  int dim = 1;
  std::string polarization;
  std::optional<double> lambda, lambda_x, lambda_y, delta, omega, eps_s;
  bool physical = false;
  std::optional<double> eps_inf, t_r, nu, omega1, dt, dx, dy;
};

struct OutputOptions {
  std::string format = "text";
  std::string out;
};

void add_scheme_options(CLI::App* sc, SchemeOptions& o) {
  sc->add_option("--model", o.model, "debye-joseph, debye-young, lorentz-joseph, lorentz-kashiwa, lorentz-young")
      ->required();
  sc->add_option("--dim", o.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  sc->add_option("--polarization", o.polarization, "TEz or TMz (2D only)");
  sc->add_option("--lambda", o.lambda, "c dt / dx; in 2D sets both axes");
  sc->add_option("--lambda-x", o.lambda_x, "c dt / dx");
  sc->add_option("--lambda-y", o.lambda_y, "c dt / dy (2D)");
  sc->add_option("--delta", o.delta, "dimensionless damping");
  sc->add_option("--omega", o.omega, "dimensionless resonance (Lorentz)");
  sc->add_option("--eps-s", o.eps_s, "eps_s / eps_inf; with --physical the static relative permittivity");
  sc->add_flag("--physical", o.physical, "take SI inputs and convert them to dimensionless parameters");
  sc->add_option("--eps-inf", o.eps_inf, "high-frequency relative permittivity (--physical)");
  sc->add_option("--t-r", o.t_r, "relaxation time in s (--physical, Debye)");
  sc->add_option("--nu", o.nu, "damping rate in 1/s (--physical, Lorentz)");
  sc->add_option("--omega1", o.omega1, "resonance in rad/s (--physical, Lorentz)");
  sc->add_option("--dt", o.dt, "time step in s (--physical)");
  sc->add_option("--dx", o.dx, "cell size in m (--physical)");
  sc->add_option("--dy", o.dy, "cell size in m (--physical, 2D)");
}

void add_output_options(CLI::App* sc, OutputOptions& o, std::vector<std::string> formats) {
  o.format = formats.front();
  sc->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  sc->add_option("--out", o.out, "write the report to this file instead of stdout");
}

std::pair<SchemeId, SchemeParams> resolve(const SchemeOptions& o) {
  const auto model = parse_model(o.model);
  if (!model) throw std::domain_error("unknown model '" + o.model + "'");
  SchemeId id;
  id.model = *model;
  id.dim = o.dim;
  if (!o.polarization.empty()) {
    const auto p = parse_polarization(o.polarization);
    if (!p) throw std::domain_error("unknown polarization '" + o.polarization + "'");
    id.polarization = *p;
  }
  id.validate();

  SchemeParams sp;
  if (o.physical) {
    if (o.lambda || o.lambda_x || o.lambda_y || o.delta || o.omega)
      throw std::domain_error("--physical replaces --lambda, --lambda-x, --lambda-y, --delta and --omega");
    PhysicalParams p;
    if (o.eps_inf) p.eps_inf = *o.eps_inf;
    p.eps_s = o.eps_s ? *o.eps_s : p.eps_inf;
    if (o.t_r) p.t_r = *o.t_r;
    if (o.nu) p.nu = *o.nu;
    if (o.omega1) p.omega1 = *o.omega1;
    if (o.dt) p.dt = *o.dt;
    if (o.dx) p.dx = *o.dx;
    if (o.dy) p.dy = *o.dy;
    sp = to_dimensionless(p, id.model);
    if (id.dim == 2 && !o.dy) sp.lambda_y = sp.lambda_x;
  } else {
    if (o.eps_inf || o.t_r || o.nu || o.omega1 || o.dt || o.dx || o.dy)
      throw std::domain_error("--eps-inf, --t-r, --nu, --omega1, --dt, --dx and --dy require --physical");
    if (o.lambda) sp.lambda_x = *o.lambda;
    if (o.lambda_x) sp.lambda_x = *o.lambda_x;
    if (id.dim == 2) {
      sp.lambda_y = o.lambda ? *o.lambda : sp.lambda_x;
      if (o.lambda_y) sp.lambda_y = *o.lambda_y;
    } else if (o.lambda_y) {
      throw std::domain_error("--lambda-y requires --dim 2");
    }
    if (o.delta) sp.delta = *o.delta;
    if (o.omega) sp.omega = *o.omega;
    if (o.eps_s) sp.eps_s_rel = *o.eps_s;
  }
  sp.validate(id);
  return {id, sp};
}

void emit(const std::string& text, const OutputOptions& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::domain_error("cannot open '" + o.out + "' for writing");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::domain_error("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw std::domain_error("cannot parse number '" + s + "'");
  return v;
}

/// JSON array of numbers or [re, im] pairs, or a comma list whose items are `re` or `re:im`.
CPoly parse_coeffs(const std::string& text) {
  const std::string s = trim(text);
  CPoly p;
  if (!s.empty() && s.front() == '[') {
    try {
      p = poly_from_json(json::parse(s));
    } catch (const json::exception& e) {
      throw std::domain_error(std::string("cannot parse coefficients: ") + e.what());
    }
  } else {
    std::vector<cplx> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        c.emplace_back(parse_number(item), 0.0);
      else
        c.emplace_back(parse_number(trim(item.substr(0, colon))), parse_number(trim(item.substr(colon + 1))));
    }
    p = CPoly(std::move(c));
  }
  if (p.size() < 2) throw std::domain_error("at least 2 coefficients are required");
  return p;
}

std::string format_cplx(cplx z) {
  std::string s = format_number(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += format_number(std::abs(z.imag())) + "i";
  return s;
}

// ---------------------------------------------------------------------------

int cmd_classify(const std::string& coeffs, const OutputOptions& o, std::ostream& out) {
  const CPoly p = parse_coeffs(coeffs);
  const PolyClass c = classify(p);
  const RootsResult r = roots(p);
  const PolyKind oracle = r.converged ? classify_by_roots(r, kUnitBand) : PolyKind::Indeterminate;
  if (o.format == "json") {
    json j;
    j["coefficients"] = to_json(p);
    j["classification"] = to_json(c);
    j["roots"] = to_json(r);
    j["root_oracle"] = to_string(oracle);
    emit(dump(j), o, out);
    return kExitOk;
  }
  std::ostringstream os;
  os << to_string(c.kind) << "\n";
  if (!c.witness.empty()) os << "witness: " << c.witness << "\n";
  if (c.witness_root) os << "root outside: " << format_cplx(*c.witness_root) << "\n";
  os << "chain:\n";
  for (const ChainStep& s : c.trace)
    os << "  depth " << s.depth << " degree " << s.degree << ": |phi(0)| = " << format_number(s.abs_phi0)
       << " vs |phi*(0)| = " << format_number(s.abs_phis0) << " -> " << to_string(s.action) << "\n";
  os << "roots (" << (r.converged ? "converged" : "not converged") << ", max residual "
     << format_number(r.max_residual) << "):\n";
  for (const RootCluster& rc : r.clusters)
    os << "  " << format_cplx(rc.value) << "  |z| = " << format_number(std::abs(rc.value)) << "  multiplicity "
       << rc.multiplicity << "\n";
  os << "root oracle: " << to_string(oracle) << "\n";
  emit(os.str(), o, out);
  return kExitOk;
}

struct AnalyzeOptions {
  std::optional<double> q, xi_x, xi_y;
  int grid = 64;
};

int cmd_analyze(const SchemeOptions& so, const AnalyzeOptions& ao, const OutputOptions& o, std::ostream& out) {
  const auto [id, sp] = resolve(so);
  StabilityVerdict v;
  std::optional<StabilityVerdict> positive;
  ConditionResult cf;
  const bool single = ao.q || ao.xi_x || ao.xi_y;
  if (ao.q && (ao.xi_x || ao.xi_y)) throw std::domain_error("--q excludes --xi-x and --xi-y");
  if (ao.grid < 1) throw std::domain_error("--grid must be >= 1");
  if (single) {
    Mode m;
    if (ao.q) {
      if (*ao.q < 0.0 || *ao.q > q_max(id, sp))
        throw std::domain_error("--q must lie in [0, q_max] = [0, " + format_number(q_max(id, sp)) + "]");
      m = mode_for_q(id, sp, *ao.q);
    } else {
      m.xi_x = ao.xi_x.value_or(0.0);
      m.xi_y = ao.xi_y.value_or(0.0);
      if (id.dim == 1 && ao.xi_y) throw std::domain_error("--xi-y requires --dim 2");
    }
    v = analyze_mode(id, sp, m);
    cf = closed_form_condition_q(id.model, sp, mode_quantities(id, sp, m).q);
  } else {
    const std::vector<Mode> grid = default_mode_grid(id, sp, ao.grid);
    v = analyze_scheme(id, sp, grid);
    std::vector<Mode> moving;
    for (const Mode& m : grid)
      if (mode_quantities(id, sp, m).q > 0.0) moving.push_back(m);
    if (!moving.empty()) positive = analyze_scheme(id, sp, moving);
    cf = closed_form_condition(id, sp);
  }
  if (o.format == "json") {
    json j;
    j["scheme"] = to_json(SchemeRecord{id, sp, v.mode});
    j["scope"] = single ? "mode" : "scheme";
    j["verdict"] = to_json(v);
    j["verdict_q_positive"] = positive ? to_json(*positive) : json(nullptr);
    j["closed_form"] = to_json(cf);
    emit(dump(j), o, out);
    return kExitOk;
  }
  std::ostringstream os;
  os << v.summary() << "\n";
  if (positive) os << "modes with q > 0: " << positive->summary() << "\n";
  os << "scheme: " << id.label() << "  lambda_x = " << format_number(sp.lambda_x);
  if (id.dim == 2) os << "  lambda_y = " << format_number(sp.lambda_y);
  os << "  delta = " << format_number(sp.delta) << "  omega = " << format_number(sp.omega)
     << "  eps_s' = " << format_number(sp.eps_s_rel) << "\n";
  os << "witness mode: q = " << format_number(v.q) << "  xi = (" << format_number(v.mode.xi_x) << ", "
     << format_number(v.mode.xi_y) << ")\n";
  os << "worst root modulus: " << format_number(v.worst_root_modulus) << "\n";
  if (v.defective_eigenvalue) os << "defective eigenvalue: " << format_cplx(*v.defective_eigenvalue) << "\n";
  if (!v.detail.empty()) os << "detail: " << v.detail << "\n";
  os << "closed form: " << cf.row.name() << ": " << to_string(cf.verdict) << " (" << cf.binding << ")\n";
  emit(os.str(), o, out);
  return kExitOk;
}

int cmd_sweep(const SchemeOptions& so, const std::vector<std::string>& axes, int grid, const OutputOptions& o,
              std::ostream& out) {
  const auto [id, sp] = resolve(so);
  if (grid < 1) throw std::domain_error("--grid must be >= 1");
  std::vector<Axis> parsed;
  for (const std::string& a : axes) parsed.push_back(parse_axis_spec(a));
  const StabilityMap m = sweep(id, sp, parsed, grid);
  emit(o.format == "json" ? dump(to_json(m)) : to_csv(m), o, out);
  return kExitOk;
}

struct ThresholdOptions {
  std::string param = "lambda";
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> width;
  int grid = 64;
  bool empirical = false;
  int J = 256;
  int steps = 10000;
  std::uint64_t seed = 1;
};

int cmd_threshold(const SchemeOptions& so, const ThresholdOptions& to, const OutputOptions& o, std::ostream& out) {
  const auto [id, sp] = resolve(so);
  const auto axis = parse_axis(to.param);
  if (!axis) throw std::domain_error("unknown parameter '" + to.param + "'");
  json j;
  j["scheme"] = to_json(SchemeRecord{id, sp, Mode{}});
  j["param"] = to_string(*axis);
  std::ostringstream os;
  if (to.empirical) {
    RunOptions ro;
    ro.J = to.J;
    ro.steps = to.steps;
    ro.init.seed = to.seed;
    const EmpiricalThreshold t = empirical_threshold(id, sp, *axis, to.lo, to.hi, ro, to.width.value_or(0.01));
    j["method"] = "fdtd";
    j["threshold"] = to_json(t);
    os << "empirical threshold " << to_string(*axis) << " = " << format_number(t.value) << "  bracket ["
       << format_number(t.lo) << ", " << format_number(t.hi) << "]  growing "
       << (t.growing_above ? "above" : "below") << "  runs " << t.runs << "\n";
  } else {
    const ThresholdResult t = find_threshold(id, sp, *axis, to.lo, to.hi, to.width.value_or(1e-3), to.grid);
    j["method"] = "analytic";
    j["threshold"] = to_json(t);
    os << "threshold " << to_string(*axis) << " = " << format_number(t.value) << "  bracket ["
       << format_number(t.lo) << ", " << format_number(t.hi) << "]  stable "
       << (t.stable_below ? "below" : "above") << "  evaluations " << t.evaluations << "\n";
  }
  emit(o.format == "json" ? dump(j) : os.str(), o, out);
  return kExitOk;
}

struct FdtdOptions {
  int J = 256;
  int steps = 10000;
  std::uint64_t seed = 1;
  std::optional<int> mode;
  std::string energy_csv;
};

int cmd_fdtd(const SchemeOptions& so, const FdtdOptions& fo, const OutputOptions& o, std::ostream& out) {
  const auto [id, sp] = resolve(so);
  RunOptions ro;
  ro.J = fo.J;
  ro.steps = fo.steps;
  ro.init.seed = fo.seed;
  if (fo.mode) {
    ro.init.kind = RunInit::Kind::Mode;
    ro.init.k = *fo.mode;
  }
  const RunReport r = run(id, sp, ro);
  if (!fo.energy_csv.empty()) {
    std::ofstream f(fo.energy_csv, std::ios::binary);
    if (!f) throw std::domain_error("cannot open '" + fo.energy_csv + "' for writing");
    f << energy_csv(r);
  }
  if (o.format == "json") {
    emit(dump(to_json(r)), o, out);
    return kExitOk;
  }
  std::ostringstream os;
  os << to_string(r.verdict) << "\n";
  os << "growth factor per step: " << format_number(r.growth) << "\n";
  os << "steps: " << r.steps_done << (r.aborted ? " (aborted: fields overflowed)" : "") << "\n";
  os << "energy: initial " << format_number(r.energy.front()) << ", final " << format_number(r.energy.back())
     << "\n";
  emit(os.str(), o, out);
  return kExitOk;
}

struct VerifyCliOptions {
  std::string rows;
  std::string perturb;
  bool perturb_given = false;
  int interior = 1000;
  int interior_2d = 250;
  int exterior = 200;
  std::uint64_t seed = 20240101;
  bool no_2d = false;
};

int cmd_verify(const VerifyCliOptions& vo, const OutputOptions& o, std::ostream& out) {
  VerifyOptions opt;
  if (!vo.rows.empty()) {
    std::stringstream ss(vo.rows);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto m = parse_model(trim(item));
      if (!m) throw std::domain_error("unknown model '" + trim(item) + "' in --rows");
      if (std::find(opt.models.begin(), opt.models.end(), *m) == opt.models.end()) opt.models.push_back(*m);
    }
  }
  if (vo.perturb_given) opt.encoding.flipped = vo.perturb.empty() ? default_perturbation() : parse_cell_ref(vo.perturb);
  if (vo.interior < 1 || vo.interior_2d < 0 || vo.exterior < 0)
    throw std::domain_error("point counts must be non-negative and --interior-points >= 1");
  opt.interior_points = vo.interior;
  opt.interior_points_2d = vo.interior_2d;
  opt.exterior_points = vo.exterior;
  opt.include_2d = !vo.no_2d;
  opt.seed = vo.seed;
  const VerifyReport r = verify_tables(opt);
  emit(o.format == "json" ? dump(to_json(r)) : r.text(), o, out);
  return r.all_pass() ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw std::domain_error("config values must be strings, numbers, booleans or arrays of them");
}

/// Removes --config PATH and splices the file's flags in after the subcommand,
/// ahead of the command-line flags so that those take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::domain_error("--config requires a file path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  std::ifstream f(*path);
  if (!f) throw std::domain_error("cannot read config file '" + *path + "'");
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw std::domain_error("config file '" + *path + "': " + e.what());
  }
  if (!cfg.is_object()) throw std::domain_error("config file must hold a JSON object of flags");
  std::vector<std::string> tokens;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    std::string name = it.key();
    std::replace(name.begin(), name.end(), '_', '-');
    name = "--" + name;
    const json& v = it.value();
    if (v.is_null()) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) tokens.push_back(name);
    } else if (v.is_array()) {
      for (const json& e : v) {
        tokens.push_back(name);
        tokens.push_back(config_value(e));
      }
    } else {
      tokens.push_back(name);
      tokens.push_back(config_value(v));
    }
  }
  auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return std::find(std::begin(kSubcommands), std::end(kSubcommands), a) != std::end(kSubcommands);
  });
  if (pos != args.end()) ++pos;
  args.insert(pos, tokens.begin(), tokens.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Von Neumann stability analysis of Yee schemes for Debye and Lorentz media", "maxstab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON object whose keys supply any flag (command-line flags win)");

  std::string coeffs;
  OutputOptions classify_out;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a polynomial by the reduction chain");
  classify_cmd->add_option("--coeffs", coeffs, "ascending coefficients: JSON array or comma list of re[:im]")
      ->required();
  add_output_options(classify_cmd, classify_out, {"text", "json"});

  SchemeOptions analyze_scheme_opts;
  AnalyzeOptions analyze_opts;
  OutputOptions analyze_out;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "stability verdict of a scheme or a single mode");
  add_scheme_options(analyze_cmd, analyze_scheme_opts);
  analyze_cmd->add_option("--q", analyze_opts.q, "analyze the single mode reaching this q");
  analyze_cmd->add_option("--xi-x", analyze_opts.xi_x, "analyze a single mode with this xi_x");
  analyze_cmd->add_option("--xi-y", analyze_opts.xi_y, "analyze a single mode with this xi_y (2D)");
  analyze_cmd->add_option("--grid", analyze_opts.grid, "q grid subdivisions");
  add_output_options(analyze_cmd, analyze_out, {"text", "json"});

  SchemeOptions sweep_scheme_opts;
  std::vector<std::string> sweep_axes;
  int sweep_grid = 64;
  OutputOptions sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "stability map over a parameter grid");
  add_scheme_options(sweep_cmd, sweep_scheme_opts);
  sweep_cmd->add_option("--axis", sweep_axes, "name=a:b:step or name=v1,v2,... (repeatable)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sweep_cmd->add_option("--grid", sweep_grid, "q grid subdivisions");
  add_output_options(sweep_cmd, sweep_out, {"csv", "json"});

  SchemeOptions threshold_scheme_opts;
  ThresholdOptions threshold_opts;
  OutputOptions threshold_out;
  CLI::App* threshold_cmd = app.add_subcommand("threshold", "bisect the stability boundary in one parameter");
  add_scheme_options(threshold_cmd, threshold_scheme_opts);
  threshold_cmd->add_option("--param", threshold_opts.param, "lambda, lambda_x, lambda_y, delta, omega, eps_s");
  threshold_cmd->add_option("--lo", threshold_opts.lo, "bracket start")->required();
  threshold_cmd->add_option("--hi", threshold_opts.hi, "bracket end")->required();
  threshold_cmd->add_option("--width", threshold_opts.width, "final bracket width (1e-3 analytic, 0.01 FDTD)");
  threshold_cmd->add_option("--grid", threshold_opts.grid, "q grid subdivisions");
  threshold_cmd->add_flag("--empirical", threshold_opts.empirical, "bisect on FDTD run verdicts (1D)");
  threshold_cmd->add_option("--J", threshold_opts.J, "FDTD grid size");
  threshold_cmd->add_option("--steps", threshold_opts.steps, "FDTD steps per run");
  threshold_cmd->add_option("--seed", threshold_opts.seed, "FDTD noise seed");
  add_output_options(threshold_cmd, threshold_out, {"text", "json"});

  SchemeOptions fdtd_scheme_opts;
  FdtdOptions fdtd_opts;
  OutputOptions fdtd_out;
  CLI::App* fdtd_cmd = app.add_subcommand("fdtd", "run the 1D Yee scheme on a periodic grid");
  add_scheme_options(fdtd_cmd, fdtd_scheme_opts);
  fdtd_cmd->add_option("--J", fdtd_opts.J, "grid size");
  fdtd_cmd->add_option("--steps", fdtd_opts.steps, "time steps");
  fdtd_cmd->add_option("--seed", fdtd_opts.seed, "noise seed");
  fdtd_cmd->add_option("--mode", fdtd_opts.mode, "start from cos(2 pi k j / J) instead of noise");
  fdtd_cmd->add_option("--energy-csv", fdtd_opts.energy_csv, "write the per-step energy series here");
  add_output_options(fdtd_cmd, fdtd_out, {"text", "json"});

  VerifyCliOptions verify_opts;
  OutputOptions verify_out;
  CLI::App* verify_cmd = app.add_subcommand("verify-tables", "check the closed-form tables against the analyzer");
  verify_cmd->add_option("--rows", verify_opts.rows, "comma list of models whose rows are checked");
  CLI::Option* perturb =
      verify_cmd->add_option("--perturb", verify_opts.perturb, "flip one strictness, TABLE:ROW:CLAUSE:INDEX")
          ->expected(0, 1);
  verify_cmd->add_option("--interior-points", verify_opts.interior, "1D interior points per row");
  verify_cmd->add_option("--interior-points-2d", verify_opts.interior_2d, "interior points per row and polarization");
  verify_cmd->add_option("--exterior-points", verify_opts.exterior, "exterior points per row");
  verify_cmd->add_flag("--no-2d", verify_opts.no_2d, "skip the 2D interior samples");
  verify_cmd->add_option("--seed", verify_opts.seed, "sampling seed");
  add_output_options(verify_cmd, verify_out, {"text", "json"});

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(coeffs, classify_out, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_scheme_opts, analyze_opts, analyze_out, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_scheme_opts, sweep_axes, sweep_grid, sweep_out, out);
    if (threshold_cmd->parsed()) return cmd_threshold(threshold_scheme_opts, threshold_opts, threshold_out, out);
    if (fdtd_cmd->parsed()) return cmd_fdtd(fdtd_scheme_opts, fdtd_opts, fdtd_out, out);
    if (verify_cmd->parsed()) {
      verify_opts.perturb_given = perturb->count() > 0;
      return cmd_verify(verify_opts, verify_out, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace maxstab::cli
