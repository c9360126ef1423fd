#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxstab/analyzer.hpp"
#include "maxstab/schemes.hpp"

namespace maxstab {

/// Row kinds as CLI names: joseph, young, lorentz-joseph, lorentz-kashiwa,
/// lorentz-young, harm-joseph, harm-kashiwa, harm-young.
const char* row_kind_name(RowKind r);
std::optional<RowKind> parse_row_kind(const std::string& s);

/// "T:row:clause:index", e.g. "2:joseph:0:0".
CellRef parse_cell_ref(const std::string& s);

/// The strictness fault used by --perturb without an argument: Table 2 Debye/Joseph "q<4" becomes "q<=4".
CellRef default_perturbation();

/// Mode-level special case with the verdict kind the analysis predicts and
/// the verdict the printed table gives at the same point.
struct BoundaryCase {
  std::string label;
  TableRowRef row;
  SchemeParams sp;  ///< lambda_x is chosen so that q is reachable
  double q = 0.0;
  VerdictKind expected_kind = VerdictKind::SchurStable;
  std::optional<VerdictReason> expected_reason;
  TableVerdict printed = TableVerdict::Stable;
  /// Non-empty when the printed row and the special-case analysis disagree at this point.
  std::string conflict;
};

std::vector<BoundaryCase> boundary_cases();

struct VerifyOptions {
  std::vector<Model> models;  ///< empty: all rows
  TableEncoding encoding;
  int interior_points = 1000;    ///< per row, 1D
  int interior_points_2d = 250;  ///< per row and 2D polarization, when include_2d
  int exterior_points = 200;   ///< per row, 1D only
  bool include_2d = true;
  double margin = 1e-3;
  std::uint64_t seed = 20240101;
  int K = 64;
};

struct InteriorStats {
  std::string geometry;  ///< "1D", "TEz", "TMz"
  int points = 0;
  int agree = 0;
  int mismatches = 0;
  int indeterminate = 0;
};

struct RowReport {
  TableRowRef row;
  std::vector<InteriorStats> interior;
  int boundary_points = 0;
  int boundary_mismatches = 0;
  int exterior_points = 0;
  int exterior_unstable = 0;  ///< analyzer agrees with the table outside the row condition
  int exterior_indeterminate = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool pass() const;
};

struct VerifyReport {
  std::vector<RowReport> rows;
  bool all_pass() const;
  /// Per-row pass/fail matrix followed by failure details.
  std::string text() const;
};

/// True when some clause holds with every inequality satisfied by at least `margin`.
bool holds_with_margin(const RowCondition& rc, double q, double delta, double omega, double margin);

VerifyReport verify_tables(const VerifyOptions& opt = {});

}  // namespace maxstab
