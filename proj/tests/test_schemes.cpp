#include "doctest.h"
#include "helpers.hpp"
#include "maxstab/cmatrix.hpp"
#include "maxstab/schemes.hpp"

using namespace maxstab;
using testutil::rel_diff_up_to_scale;

TEST_CASE("parse names") {
  CHECK(parse_model("debye-joseph") == Model::DebyeJoseph);
  CHECK(parse_model("LorentzKashiwa") == Model::LorentzKashiwa);
  CHECK(parse_model("LY") == Model::LorentzYoung);
  CHECK_FALSE(parse_model("maxwell").has_value());
  CHECK(parse_polarization("TMz") == Polarization::TMz);
  CHECK(parse_polarization("te") == Polarization::TEz);
}

TEST_CASE("to_dimensionless") {
  PhysicalParams p;
  CHECK(light_speed_inf(p) == doctest::Approx(2.99792458e8).epsilon(1e-9));
  p.dt = 1e-12;
  p.dx = 1e-3;
  p.t_r = 5e-12;
  p.eps_s = 2.0;
  const SchemeParams d = to_dimensionless(p, Model::DebyeJoseph);
  CHECK(d.delta == doctest::Approx(0.1));
  CHECK(d.lambda_x == doctest::Approx(2.99792458e8 * 1e-12 / 1e-3).epsilon(1e-9));
  CHECK(d.eps_s_rel == doctest::Approx(2.0));
  CHECK(d.omega == 0.0);

  PhysicalParams l;
  l.dt = 2e-13;
  l.dx = 1e-3;
  l.omega1 = 1e13;
  l.nu = 1e11;
  const SchemeParams lp = to_dimensionless(l, Model::LorentzYoung);
  const double w = 1e13 * 2e-13;
  CHECK(lp.omega == doctest::Approx(w * w / 2.0));
  CHECK(lp.delta == doctest::Approx(1e11 * 2e-13 / 2.0));

  PhysicalParams bad = p;
  bad.eps_s = 0.5;
  CHECK_THROWS_WITH_AS(to_dimensionless(bad, Model::DebyeJoseph), doctest::Contains("eps_s"), std::domain_error);
  bad = p;
  bad.t_r = 0.0;
  CHECK_THROWS_WITH_AS(to_dimensionless(bad, Model::DebyeYoung), doctest::Contains("t_r"), std::domain_error);
  bad = l;
  bad.omega1 = 0.0;
  CHECK_THROWS_WITH_AS(to_dimensionless(bad, Model::LorentzJoseph), doctest::Contains("omega1"), std::domain_error);
}

TEST_CASE("parameter validation") {
  SchemeId id{Model::DebyeJoseph, 1, Polarization::None};
  SchemeParams sp;
  sp.eps_s_rel = 0.9;
  CHECK_THROWS_WITH_AS(sp.validate(id), doctest::Contains("eps_s_rel"), std::domain_error);
  sp.eps_s_rel = 1.0;
  sp.lambda_x = 0.0;
  CHECK_THROWS_AS(sp.validate(id), std::domain_error);
  SchemeId bad{Model::DebyeJoseph, 2, Polarization::None};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("mode quantities") {
  SchemeId id{Model::DebyeJoseph, 2, Polarization::TEz};
  SchemeParams sp;
  sp.lambda_x = 0.6;
  sp.lambda_y = 0.3;
  for (double xi : {0.0, 0.3, 1.7, M_PI, 5.9}) {
    const ModeQuantities mq = mode_quantities(id, sp, {xi, xi / 2});
    const double s = std::sin(xi / 2);
    CHECK(mq.q_x == doctest::Approx(4 * 0.36 * s * s).epsilon(1e-14));
    CHECK(mq.q == doctest::Approx(mq.q_x + mq.q_y));
  }
  const double qm = q_max(id, sp);
  CHECK(qm == doctest::Approx(4 * (0.36 + 0.09)));
  const Mode m = mode_for_q(id, sp, 0.7 * qm);
  CHECK(mode_quantities(id, sp, m).q == doctest::Approx(0.7 * qm).epsilon(1e-13));
  const Mode corner = mode_for_q(id, sp, qm);
  CHECK(corner.xi_x == doctest::Approx(M_PI));
  CHECK(corner.xi_y == doctest::Approx(M_PI));
}

TEST_CASE("matrix entries") {
  SchemeId dj{Model::DebyeJoseph, 1, Polarization::None};
  SchemeParams sp;
  sp.delta = 0.5;
  sp.eps_s_rel = 2.0;
  const CMatrix g = build_G(dj, sp, {0.0, 0.0});
  const double want[3][3] = {{1, 0, 0}, {0, 0, 0.5}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(g(i, j) - want[i][j]) < 1e-15);

  SchemeId te{Model::DebyeJoseph, 2, Polarization::TEz};
  sp.lambda_y = 0.5;
  const CMatrix g2 = build_G(te, sp, {0.0, 0.0});
  REQUIRE(g2.n() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(g2(i, j) - (i == j ? 1.0 : 0.0)) < 1e-15);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(g2(2 + i, 2 + j) - g(1 + i, 1 + j)) < 1e-15);

  for (const SchemeId& id : testutil::all_geometries()) {
    SchemeParams p;
    p.lambda_y = 0.4;
    p.delta = 0.1;
    p.omega = is_lorentz(id.model) ? 0.2 : 0.0;
    p.eps_s_rel = 2.0;
    CHECK(build_G(id, p, {1.0, 2.0}).n() == state_size(id));
    CHECK(static_cast<int>(state_labels(id).size()) == state_size(id));
  }
}

TEST_CASE("basic polynomial values") {
  SchemeParams sp;
  sp.delta = 0.1;
  sp.eps_s_rel = 2.0;
  const CPoly p = basic_poly(Model::DebyeJoseph, sp, 1.0);
  const double want[] = {-0.8, 1.9, -2.1, 1.2};
  REQUIRE(p.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(p[k] - want[k]) < 1e-14);

  SchemeParams ly;
  ly.omega = 0.5;
  const CPoly p2 = basic_poly(Model::LorentzYoung, ly, 1.0);
  const double want2[] = {1, -2, 3, -2, 1};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(p2[k] - want2[k]) < 1e-14);

  // q = 0 has (Z - 1)^2 as a factor.
  for (double d : {0.0, 0.3, 1.5}) {
    sp.delta = d;
    const CPoly z = basic_poly(Model::DebyeJoseph, sp, 0.0);
    CHECK(std::abs(eval(z, 1.0)) < 1e-14);
    CHECK(std::abs(eval(derivative(z), 1.0)) < 1e-14);
  }
}

TEST_CASE("DJ char poly example") {
  SchemeId id{Model::DebyeJoseph, 1, Polarization::None};
  SchemeParams sp;
  sp.delta = 0.1;
  sp.eps_s_rel = 2.0;
  const CPoly c = char_poly(build_G(id, sp, {M_PI, 0.0}));
  const double want[] = {-0.8, 1.9, -2.1, 1.2};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(c[k] - want[k] / 1.2) < 1e-13);
}

TEST_CASE("characteristic polynomial identities over random samples") {
  std::mt19937_64 rng(7);
  for (const SchemeId& id : testutil::all_geometries()) {
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
      const testutil::Sample smp = testutil::random_sample(rng, id);
      const CMatrix g = build_G(id, smp.sp, smp.mode);
      const double q = mode_quantities(id, smp.sp, smp.mode).q;
      const CPoly want = id.dim == 1 ? basic_poly(id.model, smp.sp, q) : expected_factorization(id, smp.sp, q);
      worst = std::max(worst, rel_diff_up_to_scale(char_poly(g), want));
    }
    INFO(id.label());
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("2D polynomial depends on q only") {
  for (const SchemeId& id : testutil::all_geometries()) {
    if (id.dim != 2) continue;
    SchemeParams sp;
    sp.lambda_x = 0.5;
    sp.lambda_y = 0.5;
    sp.delta = 0.2;
    sp.omega = is_lorentz(id.model) ? 0.3 : 0.0;
    sp.eps_s_rel = 3.0;
    // equal q_x + q_y with different splits
    const CPoly a = char_poly(build_G(id, sp, {M_PI / 2, M_PI / 2}));
    const CPoly b = char_poly(build_G(id, sp, {M_PI, 0.0}));
    INFO(id.label());
    CHECK(rel_diff_up_to_scale(a, b) <= 1e-12);
  }
}

TEST_CASE("determinant consistency") {
  std::mt19937_64 rng(11);
  for (const SchemeId& id : testutil::all_geometries()) {
    const testutil::Sample smp = testutil::random_sample(rng, id);
    const CMatrix g = build_G(id, smp.sp, smp.mode);
    const CPoly c = char_poly(g);
    const double n = g.n();
    CHECK(std::abs(determinant(g) - std::pow(-1.0, n) * c[0]) <= 1e-10 * std::max(1.0, std::abs(c[0])));
  }
}

TEST_CASE("closed-form table conditions") {
  SchemeParams sp;
  sp.delta = 0.1;
  sp.omega = 0.5;
  sp.eps_s_rel = 2.0;
  CHECK(closed_form_condition_q(Model::LorentzYoung, sp, 2.0).verdict == TableVerdict::Stable);
  sp.omega = 0.7;
  const ConditionResult r = closed_form_condition_q(Model::LorentzYoung, sp, 2.0);
  CHECK(r.verdict == TableVerdict::Unstable);
  CHECK(r.binding.find("omega") != std::string::npos);

  SchemeParams dj;
  dj.delta = 0.5;
  CHECK(closed_form_condition_q(Model::DebyeJoseph, dj, 4.0).verdict == TableVerdict::Unstable);
  dj.eps_s_rel = 2.0;
  CHECK(closed_form_condition_q(Model::DebyeJoseph, dj, 4.0).verdict == TableVerdict::Stable);
  dj.eps_s_rel = 1.0;
  TableEncoding enc;
  enc.flipped = CellRef{{2, RowKind::Joseph}, 0, 0};
  CHECK(closed_form_condition_q(Model::DebyeJoseph, dj, 4.0, enc).verdict == TableVerdict::Stable);

  SchemeParams lk;
  lk.delta = 0.1;
  lk.omega = 0.1;
  lk.eps_s_rel = 2.0;
  CHECK(closed_form_condition_q(Model::LorentzKashiwa, lk, 4.0).verdict == TableVerdict::Unstable);

  SchemeParams hj;
  hj.omega = 0.3;
  const ConditionResult a = closed_form_condition_q(Model::LorentzJoseph, hj, 0.1);
  CHECK(a.verdict == TableVerdict::Avoid);
  CHECK(a.row.name() == "Table 2 / Harm. / Joseph et al.");

  // harmonic Young, eps_s' > 1: disjunction of the two strictness variants
  SchemeParams hy;
  hy.eps_s_rel = 2.0;
  hy.omega = 2.0 / 3.0;
  CHECK(closed_form_condition_q(Model::LorentzYoung, hy, 1.9).verdict == TableVerdict::Stable);
  CHECK(closed_form_condition_q(Model::LorentzYoung, hy, 2.0).verdict == TableVerdict::Unstable);
  hy.omega = 0.6;
  CHECK(closed_form_condition_q(Model::LorentzYoung, hy, 2.0).verdict == TableVerdict::Stable);

  CHECK(all_table_rows().size() == 16);
}
