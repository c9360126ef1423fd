#include "maxstab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "maxstab/parallel.hpp"

namespace maxstab {

const char* row_kind_name(RowKind r) {
  switch (r) {
    case RowKind::Joseph: return "joseph";
    case RowKind::Young: return "young";
    case RowKind::LorentzJoseph: return "lorentz-joseph";
    case RowKind::LorentzKashiwa: return "lorentz-kashiwa";
    case RowKind::LorentzYoung: return "lorentz-young";
    case RowKind::HarmJoseph: return "harm-joseph";
    case RowKind::HarmKashiwa: return "harm-kashiwa";
    case RowKind::HarmYoung: return "harm-young";
  }
  return "?";
}

std::optional<RowKind> parse_row_kind(const std::string& s) {
  for (RowKind r : {RowKind::Joseph, RowKind::Young, RowKind::LorentzJoseph, RowKind::LorentzKashiwa,
                    RowKind::LorentzYoung, RowKind::HarmJoseph, RowKind::HarmKashiwa, RowKind::HarmYoung})
    if (s == row_kind_name(r)) return r;
  return std::nullopt;
}

CellRef parse_cell_ref(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  for (std::string p; std::getline(is, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw std::domain_error("perturbation '" + s + "': expected T:row:clause:index");
  CellRef c;
  try {
    c.row.table = std::stoi(parts[0]);
    c.clause = std::stoi(parts[2]);
    c.index = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw std::domain_error("perturbation '" + s + "': table, clause and index must be integers");
  }
  if (c.row.table != 1 && c.row.table != 2) throw std::domain_error("perturbation '" + s + "': table must be 1 or 2");
  const auto r = parse_row_kind(parts[1]);
  if (!r) throw std::domain_error("perturbation '" + s + "': unknown row '" + parts[1] + "'");
  c.row.row = *r;
  const RowCondition rc = row_condition(c.row, SchemeParams{});
  if (c.clause < 0 || c.clause >= static_cast<int>(rc.clauses.size()) || c.index < 0 ||
      c.index >= static_cast<int>(rc.clauses[static_cast<std::size_t>(c.clause)].size()))
    throw std::domain_error("perturbation '" + s + "': no such inequality in " + c.row.name());
  return c;
}

CellRef default_perturbation() { return CellRef{{2, RowKind::Joseph}, 0, 0}; }

namespace {

BoundaryCase bc(std::string label, int table, RowKind row, double delta, double omega, double eps, double q,
                VerdictKind kind, std::optional<VerdictReason> reason, TableVerdict printed,
                std::string conflict = {}) {
  BoundaryCase c;
  c.label = std::move(label);
  c.row = {table, row};
  c.sp.lambda_x = 1.2;
  c.sp.delta = delta;
  c.sp.omega = omega;
  c.sp.eps_s_rel = eps;
  c.q = q;
  c.expected_kind = kind;
  c.expected_reason = reason;
  c.printed = printed;
  c.conflict = std::move(conflict);
  return c;
}

}  // namespace

std::vector<BoundaryCase> boundary_cases() {
  using K = VerdictKind;
  using R = VerdictReason;
  using T = TableVerdict;
  const auto PB = R::MultipleUnitRootNonDefective;
  const auto DEF = R::DefectiveUnitRoot;
  const double w2 = 2.0 / 3.0;  // 2/(2 eps_s' - 1) at eps_s' = 2
  return {
      // Debye / Joseph
      bc("q=0", 1, RowKind::Joseph, 0.3, 0, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=4", 1, RowKind::Joseph, 0.5, 0, 2, 4, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("delta=1, q=2", 1, RowKind::Joseph, 1, 0, 2, 2, K::SchurStable, std::nullopt, T::Stable),
      bc("q=0", 2, RowKind::Joseph, 0.5, 0, 1, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=2", 2, RowKind::Joseph, 0.5, 0, 1, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=4", 2, RowKind::Joseph, 0.5, 0, 1, 4, K::Unstable, DEF, T::Unstable),
      // Debye / Young
      bc("q=0", 1, RowKind::Young, 0.5, 0, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("delta=1, q=1", 1, RowKind::Young, 1, 0, 2, 1, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("delta=1, q=4", 1, RowKind::Young, 1, 0, 2, 4, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=2", 2, RowKind::Young, 0.5, 0, 1, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=4", 2, RowKind::Young, 0.4, 0, 1, 4, K::Unstable, DEF, T::Unstable),
      bc("delta=1, q=4", 2, RowKind::Young, 1, 0, 1, 4, K::Unstable, DEF, T::Unstable),
      // Lorentz / Joseph
      bc("q=0", 1, RowKind::LorentzJoseph, 0.1, 0.1, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=2", 1, RowKind::LorentzJoseph, 0.1, 0.1, 2, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=0", 2, RowKind::LorentzJoseph, 0.1, 0.1, 1, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=2", 2, RowKind::LorentzJoseph, 0.1, 0.1, 1, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      // Lorentz / Kashiwa
      bc("q=0", 1, RowKind::LorentzKashiwa, 0.1, 0.1, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=4", 1, RowKind::LorentzKashiwa, 0.1, 0.1, 2, 4, K::Unstable, std::nullopt, T::Unstable),
      bc("q=0", 2, RowKind::LorentzKashiwa, 0.1, 0.1, 1, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=2", 2, RowKind::LorentzKashiwa, 0.1, 0.1, 1, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=4", 2, RowKind::LorentzKashiwa, 0.1, 0.1, 1, 4, K::Unstable, std::nullopt, T::Unstable),
      // Lorentz / Young
      bc("q=0", 1, RowKind::LorentzYoung, 0.1, 0.3, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("q=2, omega=2/(2eps_s'-1)", 1, RowKind::LorentzYoung, 0.1, w2, 2, 2, K::SimpleVNStable, std::nullopt,
         T::Stable),
      bc("q=1, omega=1", 2, RowKind::LorentzYoung, 0.1, 1, 1, 1, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("q=2, omega=2", 2, RowKind::LorentzYoung, 0.1, 2, 1, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      // harmonic Joseph
      bc("delta=0, q=0", 1, RowKind::HarmJoseph, 0, 0.5, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("delta=0, q=2", 1, RowKind::HarmJoseph, 0, 0.5, 2, 2, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("delta=0, q=2w/(1+w), omega=1", 2, RowKind::HarmJoseph, 0, 1, 1, 1, K::Unstable, DEF, T::Avoid),
      bc("delta=0, q=0.5, omega=1", 2, RowKind::HarmJoseph, 0, 1, 1, 0.5, K::SimpleVNStable, std::nullopt,
         T::Avoid),
      // harmonic Kashiwa
      bc("delta=0, q=0", 1, RowKind::HarmKashiwa, 0, 0.5, 2, 0, K::PowerBoundedStable, PB, T::Stable),
      bc("delta=0, q=4", 1, RowKind::HarmKashiwa, 0, 0.5, 2, 4, K::Unstable, DEF, T::Unstable),
      bc("delta=0, q=4", 2, RowKind::HarmKashiwa, 0, 0.5, 1, 4, K::Unstable, DEF, T::Unstable),
      bc("delta=0, q=1, omega=1", 2, RowKind::HarmKashiwa, 0, 1, 1, 1, K::SimpleVNStable, std::nullopt, T::Stable),
      bc("delta=0, q=4w/(2+w), omega=1", 2, RowKind::HarmKashiwa, 0, 1, 1, 4.0 / 3.0, K::Unstable, DEF, T::Stable,
         "printed row 'q<4' holds, yet q=4w/(2+w) gives a defective double root"),
      // harmonic Young
      bc("delta=0, q=2, omega=2/(2eps_s'-1)", 1, RowKind::HarmYoung, 0, w2, 2, 2, K::Unstable, DEF,
         T::Unstable),
      bc("delta=0, q=2, omega=0.5", 1, RowKind::HarmYoung, 0, 0.5, 2, 2, K::SimpleVNStable, std::nullopt,
         T::Stable),
      bc("delta=0, q=0, omega=2", 2, RowKind::HarmYoung, 0, 2, 1, 0, K::Unstable, DEF, T::Unstable),
      bc("delta=0, q=2w, omega=1.2", 2, RowKind::HarmYoung, 0, 1.2, 1, 2.4, K::Unstable, DEF, T::Unstable),
      bc("delta=0, q=2w, omega=0.5", 2, RowKind::HarmYoung, 0, 0.5, 1, 1.0, K::Unstable, DEF, T::Stable,
         "printed row 'q<2, omega<1' holds, yet q=2w gives a defective double root"),
  };
}

bool holds_with_margin(const RowCondition& rc, double q, double delta, double omega, double margin) {
  for (const auto& clause : rc.clauses) {
    bool ok = true;
    for (const Inequality& in : clause) {
      const double x = in.var == TableVar::Q ? q : in.var == TableVar::Delta ? delta : omega;
      if (!(x <= in.bound - margin)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

namespace {

// Every clause violated by at least `margin` in some inequality.
bool fails_with_margin(const RowCondition& rc, double q, double delta, double omega, double margin) {
  for (const auto& clause : rc.clauses) {
    bool violated = false;
    for (const Inequality& in : clause) {
      const double x = in.var == TableVar::Q ? q : in.var == TableVar::Delta ? delta : omega;
      if (x >= in.bound + margin) violated = true;
    }
    if (!violated) return false;
  }
  return true;
}

struct Draw {
  SchemeParams sp;
  double q = 0.0;
};

// Random point of the row's applicability domain with q_max = q.
Draw draw_point(const TableRowRef& row, std::mt19937_64& rng, double qhi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Draw d;
  const Model m = row_model(row.row);
  d.sp.eps_s_rel = row.table == 1 ? 1.001 + 5.0 * u(rng) : 1.0;
  d.sp.delta = row_harmonic(row.row) ? 0.0 : 0.001 + 2.0 * u(rng);
  d.sp.omega = is_lorentz(m) ? 0.001 + 3.0 * u(rng) : 0.0;
  d.q = 0.001 + qhi * u(rng);
  return d;
}

// Extra exclusions for eps_s' = 1 harmonic rows whose printed condition misses a
// defective point: q = 2 omega (Young, whose analysis assumes q < 2 omega) and
// q = 4 omega/(2+omega) (Kashiwa).
bool on_excluded_side(const TableRowRef& row, const Draw& d, double margin) {
  if (row.table != 2) return false;
  const double w = d.sp.omega;
  if (row.row == RowKind::HarmYoung) return d.q > 2.0 * w - margin;
  if (row.row == RowKind::HarmKashiwa) return d.q > 4.0 * w / (2.0 + w) - margin;
  return false;
}

void set_lambda(const SchemeId& id, SchemeParams& sp, double q) {
  const double l = std::sqrt(q / (id.dim == 1 ? 4.0 : 8.0));
  sp.lambda_x = l;
  sp.lambda_y = id.dim == 2 ? l : 0.0;
}

std::string describe(const SchemeId& id, const SchemeParams& sp, const StabilityVerdict& v) {
  std::ostringstream os;
  os << std::setprecision(6) << id.label() << " lambda=" << sp.lambda_x << " delta=" << sp.delta
     << " omega=" << sp.omega << " eps_s'=" << sp.eps_s_rel << " q_max=" << q_max(id, sp) << ": " << v.summary()
     << " at q=" << v.q;
  return os.str();
}

RowReport verify_row(const TableRowRef& row, const VerifyOptions& opt, const std::vector<BoundaryCase>& cases) {
  RowReport rep;
  rep.row = row;
  const Model model = row_model(row.row);
  // Seed depends on the row only, so filtering does not change the samples.
  std::mt19937_64 rng(opt.seed + 131u * static_cast<unsigned>(row.table) + static_cast<unsigned>(row.row));

  std::vector<SchemeId> geoms{{model, 1, Polarization::None}};
  if (opt.include_2d) {
    geoms.push_back({model, 2, Polarization::TEz});
    geoms.push_back({model, 2, Polarization::TMz});
  }
  for (const SchemeId& id : geoms) {
    InteriorStats st;
    st.geometry = id.dim == 1 ? "1D" : to_string(id.polarization);
    const int target = id.dim == 1 ? opt.interior_points : opt.interior_points_2d;
    long attempts = 0;
    while (st.points < target) {
      if (++attempts > 1000L * target + 100000L)
        throw std::logic_error("interior sampler cannot reach " + row.name());
      Draw d = draw_point(row, rng, 4.2);
      const RowCondition rc = row_condition(row, d.sp, opt.encoding);
      if (!holds_with_margin(rc, d.q, d.sp.delta, d.sp.omega, opt.margin)) continue;
      if (on_excluded_side(row, d, opt.margin)) continue;
      set_lambda(id, d.sp, d.q);
      ++st.points;
      const StabilityVerdict v = analyze_scheme(id, d.sp, default_mode_grid(id, d.sp, opt.K));
      const ConditionResult cf = closed_form_condition(id, d.sp, opt.encoding);
      const bool table_ok = cf.row == row && cf.condition_holds;
      if (v.kind == VerdictKind::Indeterminate) {
        ++st.indeterminate;
      } else if (is_stable(v.kind) && table_ok) {
        ++st.agree;
      } else {
        ++st.mismatches;
        if (rep.failures.size() < 8)
          rep.failures.push_back("interior: " + describe(id, d.sp, v) + "; table " + to_string(cf.verdict) + " (" +
                                 cf.binding + ")");
      }
    }
    rep.interior.push_back(st);
  }

  for (const BoundaryCase& c : cases) {
    if (!(c.row == row)) continue;
    ++rep.boundary_points;
    const SchemeId id{model, 1, Polarization::None};
    const StabilityVerdict v = analyze_mode(id, c.sp, mode_for_q(id, c.sp, c.q));
    const ConditionResult cf = closed_form_condition_q(model, c.sp, c.q, opt.encoding);
    std::vector<std::string> why;
    if (v.kind != c.expected_kind || (c.expected_reason && v.reason != *c.expected_reason))
      why.push_back(std::string("analyzer ") + to_string(v.kind) + "/" + to_string(v.reason) + ", expected " +
                    to_string(c.expected_kind) + (c.expected_reason ? std::string("/") + to_string(*c.expected_reason) : ""));
    if (!(cf.row == row)) why.push_back("point maps to " + cf.row.name());
    if (cf.verdict != c.printed)
      why.push_back(std::string("encoded table gives ") + to_string(cf.verdict) + " (" + cf.binding +
                    "), printed table gives " + to_string(c.printed));
    if (!why.empty()) {
      ++rep.boundary_mismatches;
      std::string msg = "boundary " + c.label + ":";
      for (const auto& w : why) msg += " " + w + ";";
      rep.failures.push_back(msg);
    }
    if (!c.conflict.empty()) rep.notes.push_back("boundary " + c.label + ": " + c.conflict);
  }

  const SchemeId id1{model, 1, Polarization::None};
  long attempts = 0;
  while (rep.exterior_points < opt.exterior_points) {
    if (++attempts > 1000L * opt.exterior_points + 100000L) break;
    Draw d = draw_point(row, rng, 6.0);
    const RowCondition rc = row_condition(row, d.sp, opt.encoding);
    if (!fails_with_margin(rc, d.q, d.sp.delta, d.sp.omega, opt.margin)) continue;
    set_lambda(id1, d.sp, d.q);
    ++rep.exterior_points;
    const StabilityVerdict v = analyze_scheme(id1, d.sp, default_mode_grid(id1, d.sp, opt.K));
    if (v.kind == VerdictKind::Unstable) ++rep.exterior_unstable;
    if (v.kind == VerdictKind::Indeterminate) ++rep.exterior_indeterminate;
  }
  if (rep.exterior_points > 0 && rep.exterior_unstable + rep.exterior_indeterminate < rep.exterior_points) {
    std::ostringstream os;
    os << "exterior: " << rep.exterior_points - rep.exterior_unstable - rep.exterior_indeterminate << " of "
       << rep.exterior_points << " points outside the printed condition are stable (condition is sufficient only)";
    rep.notes.push_back(os.str());
  }
  return rep;
}

}  // namespace

bool RowReport::pass() const {
  if (boundary_mismatches != 0) return false;
  for (const InteriorStats& s : interior)
    if (s.mismatches != 0) return false;
  return true;
}

bool VerifyReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const RowReport& r) { return r.pass(); });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const RowReport& r : rows) {
    os << std::left << std::setw(34) << r.row.name() << " " << (r.pass() ? "PASS" : "FAIL");
    for (const InteriorStats& s : r.interior) {
      os << "  " << s.geometry << " " << s.agree << "/" << s.points;
      if (s.indeterminate) os << " (" << s.indeterminate << " indet.)";
    }
    os << "  boundary " << r.boundary_points - r.boundary_mismatches << "/" << r.boundary_points;
    os << "  exterior unstable " << r.exterior_unstable << "/" << r.exterior_points << "\n";
    for (const auto& f : r.failures) os << "    mismatch: " << f << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
  }
  int pass = 0;
  for (const RowReport& r : rows) pass += r.pass() ? 1 : 0;
  os << pass << "/" << rows.size() << " rows pass\n";
  return os.str();
}

VerifyReport verify_tables(const VerifyOptions& opt) {
  std::vector<TableRowRef> rows;
  for (const TableRowRef& r : all_table_rows()) {
    const Model m = row_model(r.row);
    if (opt.models.empty() || std::find(opt.models.begin(), opt.models.end(), m) != opt.models.end())
      rows.push_back(r);
  }
  const std::vector<BoundaryCase> cases = boundary_cases();
  VerifyReport rep;
  rep.rows.resize(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) { rep.rows[i] = verify_row(rows[i], opt, cases); });
  return rep;
}

}  // namespace maxstab
