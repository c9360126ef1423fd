#include <doctest.h>

#include <algorithm>

#include "maxstab/verify.hpp"

using namespace maxstab;

namespace {

VerifyOptions small(std::vector<Model> models) {
  VerifyOptions o;
  o.models = std::move(models);
  o.interior_points = 150;
  o.interior_points_2d = 30;
  o.exterior_points = 30;
  return o;
}

}  // namespace

TEST_CASE("row names and cell references") {
  for (const TableRowRef& r : all_table_rows()) CHECK(parse_row_kind(row_kind_name(r.row)) == r.row);
  CHECK_FALSE(parse_row_kind("debye").has_value());
  const CellRef c = parse_cell_ref("2:joseph:0:0");
  CHECK(c.row.table == 2);
  CHECK(c.row.row == RowKind::Joseph);
  const CellRef d = default_perturbation();
  CHECK(d.row == c.row);
  CHECK(d.clause == 0);
  CHECK(d.index == 0);
  CHECK_THROWS_AS(parse_cell_ref("2:joseph:0"), std::domain_error);
  CHECK_THROWS_AS(parse_cell_ref("3:joseph:0:0"), std::domain_error);
  CHECK_THROWS_AS(parse_cell_ref("2:nobody:0:0"), std::domain_error);
  CHECK_THROWS_AS(parse_cell_ref("2:joseph:5:0"), std::domain_error);
  CHECK_THROWS_AS(parse_cell_ref("x:joseph:0:0"), std::domain_error);
}

TEST_CASE("margin") {
  const TableRowRef dj2{2, RowKind::Joseph};
  const RowCondition rc = row_condition(dj2, SchemeParams{});
  CHECK(holds_with_margin(rc, 3.5, 0.1, 0.0, 1e-3));
  CHECK_FALSE(holds_with_margin(rc, 3.9995, 0.1, 0.0, 1e-3));
  CHECK_FALSE(holds_with_margin(rc, 4.5, 0.1, 0.0, 1e-3));
}

TEST_CASE("boundary cases cover every row") {
  const auto cases = boundary_cases();
  for (const TableRowRef& r : all_table_rows())
    CHECK(std::any_of(cases.begin(), cases.end(), [&](const BoundaryCase& c) { return c.row == r; }));
  int conflicts = 0;
  for (const BoundaryCase& c : cases) conflicts += c.conflict.empty() ? 0 : 1;
  CHECK(conflicts == 2);
}

TEST_CASE("Debye rows pass and filtering keeps only their rows") {
  const VerifyReport r = verify_tables(small({Model::DebyeJoseph, Model::DebyeYoung}));
  REQUIRE(r.rows.size() == 4);
  for (const RowReport& row : r.rows) {
    CHECK(row_model(row.row.row) != Model::LorentzJoseph);
    CHECK(row.interior.size() == 3);
    CHECK(row.interior.front().points == 150);
  }
  CHECK(r.all_pass());
  CHECK(r.text().find("4/4 rows pass") != std::string::npos);
}

TEST_CASE("a strictness fault is reported against its row") {
  VerifyOptions o = small({Model::DebyeJoseph});
  o.encoding.flipped = default_perturbation();
  const VerifyReport r = verify_tables(o);
  CHECK_FALSE(r.all_pass());
  for (const RowReport& row : r.rows) {
    const bool faulty = row.row.name() == "Table 2 / Debye / Joseph et al.";
    CHECK(row.pass() == !faulty);
    if (faulty) CHECK(row.boundary_mismatches > 0);
  }
  CHECK(r.text().find("Table 2 / Debye / Joseph et al.    FAIL") != std::string::npos);
}

TEST_CASE("Lorentz harmonic rows pass on a small sample") {
  const VerifyReport r = verify_tables(small({Model::LorentzKashiwa, Model::LorentzYoung}));
  CHECK(r.all_pass());
}
