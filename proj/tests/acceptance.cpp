#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "maxstab/analyzer.hpp"
#include "maxstab/cmatrix.hpp"
#include "maxstab/cpoly.hpp"
#include "maxstab/fdtd.hpp"
#include "maxstab/schemes.hpp"
#include "maxstab/verify.hpp"

using namespace maxstab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d %s: %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  return ok;
}

// ---------------------------------------------------------------------------
// 1. Reduction chain against an eigenvalue oracle

/// Roots with a known structure; roots off the circle keep 0.02 from it and from each other.
std::vector<cplx> structured_roots(std::mt19937_64& rng, int degree, int shape) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto angle = [&] { return 2.0 * std::numbers::pi * u(rng); };
  auto separated = [&](const std::vector<cplx>& have, cplx z) {
    for (const cplx& h : have)
      if (std::abs(h - z) < 0.02) return false;
    return true;
  };
  std::vector<cplx> r;
  auto push = [&](std::function<cplx()> draw) {
    for (;;) {
      const cplx z = draw();
      if (separated(r, z)) {
        r.push_back(z);
        return;
      }
    }
  };
  auto inside = [&] { return std::polar(0.98 * u(rng), angle()); };
  auto on_circle = [&] { return std::polar(1.0, angle()); };
  auto outside = [&] { return std::polar(1.02 + 2.0 * u(rng), angle()); };
  switch (shape) {
    case 0:  // Schur
      break;
    case 1: {  // simple unit roots
      const int k = 1 + static_cast<int>(rng() % degree);
      for (int i = 0; i < k; ++i) push(on_circle);
      break;
    }
    case 2: {  // one double unit root
      if (degree >= 2) {
        push(on_circle);
        r.push_back(r.back());
      }
      break;
    }
    default:  // one root outside
      push(outside);
      break;
  }
  while (static_cast<int>(r.size()) < degree) push(inside);
  return r;
}

/// Classification from Eigen's companion eigenvalues, clustered at 1e-5 with a 1e-6 unit band.
PolyKind oracle_kind(const CPoly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  std::vector<cplx> z(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::vector<std::pair<cplx, int>> clusters;
  for (const cplx& v : z) {
    bool merged = false;
    for (auto& cl : clusters)
      if (std::abs(cl.first - v) < 1e-5) {
        ++cl.second;
        merged = true;
        break;
      }
    if (!merged) clusters.push_back({v, 1});
  }
  bool unit = false, multiple_unit = false;
  for (const auto& cl : clusters) {
    const double m = std::abs(cl.first);
    if (m > 1.0 + 1e-6) return PolyKind::HasRootOutside;
    if (m >= 1.0 - 1e-6) {
      unit = true;
      multiple_unit = multiple_unit || cl.second > 1;
    }
  }
  if (multiple_unit) return PolyKind::NonSimpleVonNeumann;
  return unit ? PolyKind::SimpleVonNeumann : PolyKind::Schur;
}

bool criterion_1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int total = 10000;
  int indeterminate = 0, disagree = 0;
  int per_kind[5] = {0, 0, 0, 0, 0};
  std::string first;
  for (int t = 0; t < total; ++t) {
    const int degree = 1 + static_cast<int>(rng() % 6);
    const int shape = static_cast<int>(rng() % 5);
    CPoly p;
    if (shape == 4) {
      std::vector<cplx> c(degree + 1);
      for (cplx& x : c) x = {u(rng), rng() % 2 ? u(rng) : 0.0};
      if (std::abs(c.back()) < 0.1) c.back() = 1.0;
      p = CPoly(std::move(c));
    } else {
      p = CPoly::from_roots(structured_roots(rng, degree, shape)) * cplx(u(rng) + 1.5, u(rng));
    }
    const PolyKind want = oracle_kind(p);
    const PolyKind got = classify(p).kind;
    ++per_kind[static_cast<int>(want)];
    if (got == PolyKind::Indeterminate) {
      ++indeterminate;
    } else if (got != want) {
      if (disagree++ == 0) {
        std::ostringstream os;
        os << "; first disagreement: degree " << degree << " oracle " << to_string(want) << " chain "
           << to_string(got);
        first = os.str();
      }
    }
  }
  const double secs = seconds_since(t0);
  const double rate = static_cast<double>(indeterminate) / total;
  std::ostringstream os;
  os << total << " polynomials (oracle Schur " << per_kind[0] << ", simple VN " << per_kind[1] << ", non-simple VN "
     << per_kind[2] << ", outside " << per_kind[3] << "), " << disagree << " disagreements, indeterminate "
     << 100.0 * rate << "% (< 0.5%), " << secs << " s (< 10 s)" << first;
  return report(1, disagree == 0 && rate < 0.005 && secs < 10.0, os.str());
}

// ---------------------------------------------------------------------------
// 2. Characteristic polynomial identities

bool criterion_2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240602);
  double worst = 0.0;
  std::string worst_id;
  int samples = 0;
  for (const SchemeId& id : testutil::all_geometries()) {
    for (int s = 0; s < 1000; ++s) {
      const testutil::Sample smp = testutil::random_sample(rng, id);
      const double q = mode_quantities(id, smp.sp, smp.mode).q;
      const CPoly want = id.dim == 1 ? basic_poly(id.model, smp.sp, q) : expected_factorization(id, smp.sp, q);
      const double e = testutil::rel_diff_up_to_scale(char_poly(build_G(id, smp.sp, smp.mode)), want);
      if (!(e <= worst)) {
        worst = e;
        worst_id = id.label();
      }
      ++samples;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << samples << " samples over 15 geometries, worst coefficient error " << worst << " (" << worst_id
     << ", <= 1e-10), " << secs << " s (< 30 s)";
  return report(2, worst <= 1e-10 && secs < 30.0, os.str());
}

// ---------------------------------------------------------------------------
// 3. Special cases

struct Special {
  std::string label;
  Model model;
  SchemeParams sp;
  double q;
  VerdictKind kind;
  std::optional<VerdictReason> reason;
};

SchemeParams params(double lambda, double delta, double omega, double eps) {
  SchemeParams sp;
  sp.lambda_x = lambda;
  sp.delta = delta;
  sp.omega = omega;
  sp.eps_s_rel = eps;
  return sp;
}

bool criterion_3() {
  using K = VerdictKind;
  const auto DEF = VerdictReason::DefectiveUnitRoot;
  std::vector<Special> cases = {
      {"DJ q=0", Model::DebyeJoseph, params(0.9, 0.3, 0.0, 2.0), 0.0, K::PowerBoundedStable, {}},
      {"DJ q=4 eps'>1", Model::DebyeJoseph, params(1.0, 0.3, 0.0, 2.0), 4.0, K::SimpleVNStable, {}},
      {"DJ q=4 eps'=1", Model::DebyeJoseph, params(1.0, 0.3, 0.0, 1.0), 4.0, K::Unstable, DEF},
      {"DY q=4 eps'=1", Model::DebyeYoung, params(1.0, 0.3, 0.0, 1.0), 4.0, K::Unstable, {}},
      {"LJ q=2", Model::LorentzJoseph, params(1.0, 0.1, 0.1, 2.0), 2.0, K::SimpleVNStable, {}},
      {"LK q=4", Model::LorentzKashiwa, params(1.0, 0.1, 0.1, 2.0), 4.0, K::Unstable, {}},
      {"HJ eps'=1 q=2w/(1+w)", Model::LorentzJoseph, params(1.0, 0.0, 0.5, 1.0), 2.0 * 0.5 / 1.5, K::Unstable, DEF},
      {"HY eps'=1 q=2w", Model::LorentzYoung, params(1.0, 0.0, 0.5, 1.0), 1.0, K::Unstable, DEF},
  };
  for (double q : {0.25, 1.0, 2.0, 3.0, 4.0})
    cases.push_back({"DY delta=1 q=" + std::to_string(q).substr(0, 4), Model::DebyeYoung, params(1.0, 1.0, 0.0, 2.0),
                     q, K::SimpleVNStable, {}});
  int ok = 0;
  std::string failures;
  for (const Special& c : cases) {
    const SchemeId id{c.model, 1, Polarization::None};
    const StabilityVerdict v = analyze_mode(id, c.sp, mode_for_q(id, c.sp, c.q));
    const bool pass = v.kind == c.kind && (!c.reason || v.reason == *c.reason);
    if (pass)
      ++ok;
    else
      failures += "; " + c.label + " gave " + to_string(v.kind) + "(" + to_string(v.reason) + ")";
  }
  std::ostringstream os;
  os << ok << "/" << cases.size() << " special cases match" << failures;
  return report(3, ok == static_cast<int>(cases.size()), os.str());
}

// ---------------------------------------------------------------------------
// 4. Table reproduction

bool criterion_4() {
  const auto t0 = Clock::now();
  const VerifyOptions opt;
  const VerifyReport r = verify_tables(opt);
  const double secs = seconds_since(t0);
  int pass = 0, boundary = 0, mismatches = 0, interior = 0;
  for (const RowReport& row : r.rows) {
    pass += row.pass() ? 1 : 0;
    boundary += row.boundary_points;
    mismatches += row.boundary_mismatches;
    for (const InteriorStats& s : row.interior) {
      interior += s.points;
      mismatches += s.mismatches;
    }
  }
  std::ostringstream os;
  os << pass << "/" << r.rows.size() << " rows pass, " << opt.interior_points << " 1D + 2 x "
     << opt.interior_points_2d << " 2D interior points per row (" << interior << " total), " << boundary
     << " boundary points, " << mismatches << " mismatches, " << secs << " s (< 120 s)";
  return report(4, r.all_pass() && mismatches == 0 && secs < 120.0, os.str());
}

// ---------------------------------------------------------------------------
// 5. Empirical thresholds

bool criterion_5() {
  struct Target {
    std::string label;
    Model model;
    SchemeParams sp;
    ParamAxis axis;
    double lo, hi, want;
  };
  const std::vector<Target> targets = {
      {"DJ eps'=2 lambda*", Model::DebyeJoseph, params(0.5, 0.3, 0.0, 2.0), ParamAxis::Lambda, 0.5, 1.5, 1.0},
      {"LJ eps'=2 d=0.1 w=0.1 lambda*", Model::LorentzJoseph, params(0.5, 0.1, 0.1, 2.0), ParamAxis::Lambda, 0.3, 1.2,
       std::sqrt(0.5)},
      {"LK eps'=2 d=0.1 w=0.1 lambda*", Model::LorentzKashiwa, params(0.5, 0.1, 0.1, 2.0), ParamAxis::Lambda, 0.5,
       1.5, 1.0},
      {"DY eps'=2 lambda=0.1 delta*", Model::DebyeYoung, params(0.1, 0.5, 0.0, 2.0), ParamAxis::Delta, 0.5, 1.5, 1.0},
  };
  RunOptions ro;
  ro.J = 256;
  ro.steps = 10000;
  bool all = true;
  std::ostringstream os;
  for (const Target& t : targets) {
    const auto t0 = Clock::now();
    const EmpiricalThreshold e =
        empirical_threshold(SchemeId{t.model, 1, Polarization::None}, t.sp, t.axis, t.lo, t.hi, ro, 0.01);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(e.value - t.want) <= 0.02 && secs < 30.0;
    all = all && ok;
    os << (os.tellp() > 0 ? "; " : "") << t.label << " = " << e.value << " (want " << t.want << " +- 0.02, " << secs
       << " s)";
  }
  return report(5, all, "J=256, 10000 steps: " + os.str());
}

// ---------------------------------------------------------------------------
// 6. Single-mode equivalence

bool criterion_6() {
  std::mt19937_64 rng(20240606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int J = 64;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Model m = kAllModels[t % 5];
    const SchemeId id{m, 1, Polarization::None};
    const testutil::Sample smp = testutil::random_sample(rng, id);
    const int k = static_cast<int>(rng() % J);
    std::vector<cplx> amp(state_size(id));
    for (cplx& a : amp) a = {u(rng), u(rng)};
    ComplexFieldState s = mode_state(m, J, k, amp);
    step(smp.sp, s);
    const std::vector<cplx> want = mat_apply(build_G(id, smp.sp, Mode{2.0 * std::numbers::pi * k / J, 0.0}), amp);
    double err = 0.0, scale = 0.0;
    for (std::size_t f = 0; f < amp.size(); ++f)
      for (int j = 0; j < J; ++j) {
        const cplx w = want[f] * std::polar(1.0, 2.0 * std::numbers::pi * k * j / J);
        err = std::max(err, std::abs(s.arrays[f][j] - w));
        scale = std::max(scale, std::abs(w));
      }
    worst = std::max(worst, err / scale);
  }
  std::ostringstream os;
  os << "20 random (scheme, parameters, mode) triples, worst relative error " << worst << " (<= 1e-12)";
  return report(6, worst <= 1e-12, os.str());
}

}  // namespace

int main() {
  bool ok = true;
  ok = criterion_1() && ok;
  ok = criterion_2() && ok;
  ok = criterion_3() && ok;
  ok = criterion_4() && ok;
  ok = criterion_5() && ok;
  ok = criterion_6() && ok;
  return ok ? 0 : 1;
}
