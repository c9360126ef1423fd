#include <algorithm>
#include <random>

#include "doctest.h"
#include "maxstab/analyzer.hpp"

using namespace maxstab;

namespace {
const SchemeId kDJ{Model::DebyeJoseph, 1, Polarization::None};
const SchemeId kDY{Model::DebyeYoung, 1, Polarization::None};
const SchemeId kLJ{Model::LorentzJoseph, 1, Polarization::None};
const SchemeId kLK{Model::LorentzKashiwa, 1, Polarization::None};
const SchemeId kLY{Model::LorentzYoung, 1, Polarization::None};

SchemeParams P(double lambda, double delta, double omega, double eps) {
  SchemeParams sp;
  sp.lambda_x = lambda;
  sp.delta = delta;
  sp.omega = omega;
  sp.eps_s_rel = eps;
  return sp;
}

StabilityVerdict at_q(const SchemeId& id, const SchemeParams& sp, double q) {
  return analyze_mode(id, sp, mode_for_q(id, sp, q));
}
}  // namespace

TEST_CASE("mode ladder examples") {
  CHECK(at_q(kDJ, P(0.5, 0.1, 0, 2), 1.0).kind == VerdictKind::SchurStable);

  const StabilityVerdict d = at_q(kDJ, P(1.0, 0.5, 0, 1), 4.0);
  CHECK(d.kind == VerdictKind::Unstable);
  CHECK(d.reason == VerdictReason::DefectiveUnitRoot);
  REQUIRE(d.defective_eigenvalue.has_value());
  CHECK(std::abs(*d.defective_eigenvalue + 1.0) < 1e-6);

  for (double delta : {0.0, 0.1, 0.7, 1.5})
    for (double eps : {1.0, 2.0, 4.5}) {
      const StabilityVerdict v = at_q(kDJ, P(0.5, delta, 0, eps), 0.0);
      CHECK(v.kind == VerdictKind::PowerBoundedStable);
      CHECK(v.reason == VerdictReason::MultipleUnitRootNonDefective);
    }

  // harmonic Joseph, eps_s' = 1, omega = q / (2 - q) at q = 1
  const StabilityVerdict h = at_q(kLJ, P(0.5, 0.0, 1.0, 1.0), 1.0);
  CHECK(h.kind == VerdictKind::Unstable);
  CHECK(h.reason == VerdictReason::DefectiveUnitRoot);
}

TEST_CASE("special cases") {
  CHECK(at_q(kDJ, P(1.0, 0.3, 0, 2), 4.0).kind == VerdictKind::SimpleVNStable);
  for (double q : {0.3, 1.0, 2.5, 4.0}) CHECK(at_q(kDY, P(1.0, 1.0, 0, 2.5), q).kind == VerdictKind::SimpleVNStable);
  CHECK(at_q(kDY, P(1.0, 0.4, 0, 1), 4.0).kind == VerdictKind::Unstable);
  CHECK(at_q(kLJ, P(1.0, 0.1, 0.1, 2), 2.0).kind == VerdictKind::SimpleVNStable);
  CHECK(at_q(kLK, P(1.0, 0.1, 0.1, 2), 4.0).kind == VerdictKind::Unstable);
  for (double w : {0.2, 0.5, 0.9}) {
    const StabilityVerdict v = at_q(kLY, P(1.0, 0.0, w, 1.0), 2 * w);
    CHECK(v.kind == VerdictKind::Unstable);
    CHECK(v.reason == VerdictReason::DefectiveUnitRoot);
  }
}

TEST_CASE("scheme aggregation") {
  CHECK(is_stable(analyze_scheme(kDJ, P(1.0, 0.1, 0, 2)).kind));
  const StabilityVerdict u = analyze_scheme(kDJ, P(1.0, 0.1, 0, 1));
  CHECK(u.kind == VerdictKind::Unstable);
  CHECK(u.mode.xi_x == doctest::Approx(M_PI));
  const StabilityVerdict y = analyze_scheme(kLY, P(0.8, 0.0, 1.2, 1.0));
  CHECK(y.kind == VerdictKind::Unstable);
  CHECK_THROWS_AS(analyze_scheme(kDJ, P(1, 0.1, 0, 2), {}), std::domain_error);

  // adding modes never improves the verdict
  const SchemeParams sp = P(0.9, 0.2, 0, 1.0);
  std::vector<Mode> grid{{0.3, 0}, {1.0, 0}};
  const StabilityVerdict a = analyze_scheme(kDJ, sp, grid);
  grid.push_back({M_PI, 0});
  const StabilityVerdict b = analyze_scheme(kDJ, sp, grid);
  CHECK(b.kind >= a.kind);
}

TEST_CASE("default grid") {
  const SchemeParams sp = P(0.8, 0.1, 0.4, 2.0);
  const auto qs = default_q_grid(kLJ, sp);
  CHECK(qs.front() == 0.0);
  CHECK(qs.back() == doctest::Approx(q_max(kLJ, sp)));
  CHECK(std::is_sorted(qs.begin(), qs.end()));
  CHECK(std::find(qs.begin(), qs.end(), 2.0) != qs.end());
  CHECK(std::find(qs.begin(), qs.end(), 0.8) != qs.end());
  CHECK(std::find(qs.begin(), qs.end(), 4.0 * 0.4 / 2.4) != qs.end());
  const SchemeId te{Model::DebyeJoseph, 2, Polarization::TEz};
  SchemeParams s2 = sp;
  s2.omega = 0;
  s2.lambda_y = 0.8;
  const auto modes = default_mode_grid(te, s2);
  CHECK(modes.front().xi_x == 0.0);
  bool corner = false;
  for (const Mode& m : modes) corner = corner || (m.xi_x == doctest::Approx(M_PI) && m.xi_y == doctest::Approx(M_PI));
  CHECK(corner);
}

TEST_CASE("axis parsing") {
  const Axis a = parse_axis_spec("lambda=0.1:1.0:0.05");
  CHECK(a.param == ParamAxis::Lambda);
  CHECK(a.values.size() == 19);
  CHECK(a.values.back() == doctest::Approx(1.0));
  const Axis b = parse_axis_spec("eps-s=1,2,5");
  CHECK(b.param == ParamAxis::EpsS);
  CHECK(b.values == std::vector<double>{1, 2, 5});
  CHECK(parse_axis_spec("delta=").values.empty());
  CHECK_THROWS_AS(parse_axis_spec("foo=1:2:0.1"), std::domain_error);
  CHECK_THROWS_AS(parse_axis_spec("delta=1:2:0"), std::domain_error);
  CHECK_THROWS_AS(parse_axis_spec("delta=1:x:0.1"), std::domain_error);
}

TEST_CASE("sweep") {
  const SchemeParams base = P(0.5, 0.1, 0, 2);
  CHECK(sweep(kDJ, base, {}).cells.empty());
  CHECK(sweep(kDJ, base, {Axis{ParamAxis::Lambda, {}}}).cells.empty());

  Axis lam{ParamAxis::Lambda, {}};
  for (int k = 1; k <= 10; ++k) lam.values.push_back(0.1 * k);
  const StabilityMap m = sweep(kDJ, base, {lam, Axis{ParamAxis::EpsS, {1, 2, 5}}});
  REQUIRE(m.cells.size() == 30);
  for (const MapCell& c : m.cells) {
    const bool expect_unstable = std::abs(c.coords[0] - 1.0) < 1e-12 && c.coords[1] == 1.0;
    INFO(c.coords[0], " ", c.coords[1]);
    CHECK(is_stable(c.verdict.kind) == !expect_unstable);
  }
  CHECK(m.transitions.size() == 2);

  const StabilityMap lj = sweep(kLJ, P(0.5, 0.1, 0.1, 2), {Axis{ParamAxis::Lambda, {0.6, 0.75}}});
  REQUIRE(lj.cells.size() == 2);
  CHECK(is_stable(lj.cells[0].verdict.kind));
  CHECK(lj.cells[0].closed_form.verdict == TableVerdict::Stable);
  CHECK_FALSE(is_stable(lj.cells[1].verdict.kind));
  CHECK(lj.cells[1].closed_form.verdict == TableVerdict::Unstable);

  CHECK_THROWS_AS(sweep(kDJ, base, {Axis{ParamAxis::EpsS, {0.5}}}), std::domain_error);
}

TEST_CASE("thresholds") {
  const ThresholdResult dj = find_threshold(kDJ, P(0.5, 0.3, 0, 2), ParamAxis::Lambda, 0.5, 1.5);
  CHECK(dj.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(dj.hi - dj.lo <= 1e-3);
  CHECK(dj.stable_below);
  const ThresholdResult lj = find_threshold(kLJ, P(0.5, 0.1, 0.1, 2), ParamAxis::Lambda, 0.5, 1.0);
  CHECK(lj.value == doctest::Approx(0.7071).epsilon(0.01));
  const ThresholdResult dy = find_threshold(kDY, P(0.1, 0.5, 0, 2), ParamAxis::Delta, 0.5, 1.5);
  CHECK(dy.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(find_threshold(kDJ, P(0.5, 0.3, 0, 2), ParamAxis::Lambda, 0.2, 0.4), std::domain_error);
}

TEST_CASE("ladder soundness against roots") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const Model m = kAllModels[t % 5];
    const SchemeId id{m, 1, Polarization::None};
    const SchemeParams sp = P(0.2 + u(rng), 1.5 * u(rng), is_lorentz(m) ? 2.5 * u(rng) : 0.0, 1 + 4 * u(rng));
    const StabilityVerdict v = analyze_mode(id, sp, {2 * M_PI * u(rng), 0});
    if (v.kind == VerdictKind::SchurStable) CHECK(v.worst_root_modulus < 1.0 - 1e-12);
    if (v.kind == VerdictKind::Unstable && v.reason == VerdictReason::RootOutsideUnitDisk)
      CHECK(v.worst_root_modulus > 1.0 + 1e-12);
  }
}
