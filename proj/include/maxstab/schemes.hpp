#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxstab/cmatrix.hpp"
#include "maxstab/cpoly.hpp"

namespace maxstab {

enum class Model { DebyeJoseph, DebyeYoung, LorentzJoseph, LorentzKashiwa, LorentzYoung };
enum class Polarization { None, TEz, TMz };

inline constexpr Model kAllModels[] = {Model::DebyeJoseph, Model::DebyeYoung, Model::LorentzJoseph,
                                       Model::LorentzKashiwa, Model::LorentzYoung};

bool is_lorentz(Model m);
/// Kebab-case name, e.g. "debye-joseph".
const char* to_string(Model m);
const char* to_string(Polarization p);
/// Accepts kebab-case, CamelCase and the two-letter abbreviations (DJ, DY, LJ, LK, LY).
std::optional<Model> parse_model(const std::string& s);
std::optional<Polarization> parse_polarization(const std::string& s);

struct SchemeId {
  Model model = Model::DebyeJoseph;
  int dim = 1;
  Polarization polarization = Polarization::None;

  /// Throws std::domain_error when dim is not 1 or 2 or the polarization does not match dim.
  void validate() const;
  std::string label() const;
};

/// SI inputs. Defaults are the vacuum constants.
struct PhysicalParams {
  double eps0 = 8.8541878128e-12;
  double mu0 = 1.25663706212e-6;
  double eps_inf = 1.0;
  double eps_s = 1.0;
  double t_r = 0.0;     ///< s, Debye
  double nu = 0.0;      ///< 1/s, Lorentz
  double omega1 = 0.0;  ///< rad/s, Lorentz
  double dt = 0.0;
  double dx = 0.0;
  double dy = 0.0;      ///< 2D only; 0 means unused
};

/// Dimensionless parameters. delta = 0 with a Lorentz model is the harmonic case.
struct SchemeParams {
  double lambda_x = 0.5;
  double lambda_y = 0.0;
  double delta = 0.0;
  double omega = 0.0;
  double eps_s_rel = 1.0;

  double alpha() const { return eps_s_rel - 1.0; }
  /// Throws std::domain_error naming the violated constraint.
  void validate(const SchemeId& id) const;
};

struct Mode {
  double xi_x = 0.0;
  double xi_y = 0.0;
};

struct ModeQuantities {
  cplx sigma_x;
  cplx sigma_y;
  double q_x = 0.0;
  double q_y = 0.0;
  double q = 0.0;
};

ModeQuantities mode_quantities(const SchemeId& id, const SchemeParams& sp, const Mode& m);

/// 4 lambda^2 in 1D, 4 (lambda_x^2 + lambda_y^2) in 2D.
double q_max(const SchemeId& id, const SchemeParams& sp);

/// A mode reaching the given q; in 2D q is split in proportion to lambda_x^2 : lambda_y^2.
Mode mode_for_q(const SchemeId& id, const SchemeParams& sp, double q);

double light_speed_inf(const PhysicalParams& p);
SchemeParams to_dimensionless(const PhysicalParams& p, Model model);

/// Number of state components of the amplification matrix.
int state_size(const SchemeId& id);
std::vector<std::string> state_labels(const SchemeId& id);

CMatrix build_G(const SchemeId& id, const SchemeParams& sp, const Mode& m);

/// One-dimensional basic polynomial with real coefficients, ascending order.
CPoly basic_poly(Model model, const SchemeParams& sp, double q);

/// Extra factor of the 2D characteristic polynomial besides (Z - 1); 1 for TE_z.
CPoly extra_factor(const SchemeId& id, const SchemeParams& sp);

/// Predicted 2D characteristic polynomial (Z - 1) * extra * P. Requires dim = 2.
CPoly expected_factorization(const SchemeId& id, const SchemeParams& sp, double q);

// ---------------------------------------------------------------------------
// Closed-form stability tables

enum class TableVerdict { Stable, Unstable, Avoid };
const char* to_string(TableVerdict v);

enum class TableVar { Q, Delta, Omega };

/// One printed inequality `var < bound` or `var <= bound`.
struct Inequality {
  TableVar var = TableVar::Q;
  double bound = 0.0;
  bool strict = false;
  std::string bound_text;
};

/// Row condition in disjunctive form: any clause holding means the row holds.
struct RowCondition {
  std::vector<std::vector<Inequality>> clauses;
  bool avoid = false;  ///< the dimension columns say "to avoid"
};

enum class RowKind { Joseph, Young, LorentzJoseph, LorentzKashiwa, LorentzYoung, HarmJoseph, HarmKashiwa, HarmYoung };

struct TableRowRef {
  int table = 1;  ///< 1: eps_s > eps_inf, 2: eps_s = eps_inf
  RowKind row = RowKind::Joseph;
  std::string name() const;
  bool operator==(const TableRowRef&) const = default;
};

/// Identifies one printed inequality, used to inject a strictness fault.
struct CellRef {
  TableRowRef row;
  int clause = 0;
  int index = 0;
};

/// Strictness encoding as printed, optionally with one cell flipped.
struct TableEncoding {
  std::optional<CellRef> flipped;
};

TableRowRef table_row_for(Model model, const SchemeParams& sp);
std::vector<TableRowRef> all_table_rows();
/// Model and harmonic flag of a row.
Model row_model(RowKind r);
bool row_harmonic(RowKind r);

RowCondition row_condition(const TableRowRef& row, const SchemeParams& sp, const TableEncoding& enc = {});

struct ConditionResult {
  TableRowRef row;
  TableVerdict verdict = TableVerdict::Stable;
  bool condition_holds = false;  ///< the inequalities hold (also reported for "avoid" rows)
  std::string binding;           ///< the violated inequality, or the row condition when it holds
};

/// Evaluates the matching table row with q replaced by the given value.
ConditionResult closed_form_condition_q(Model model, const SchemeParams& sp, double q,
                                        const TableEncoding& enc = {});

/// Evaluates the matching table row over all modes (q = q_max of the geometry).
ConditionResult closed_form_condition(const SchemeId& id, const SchemeParams& sp,
                                      const TableEncoding& enc = {});

}  // namespace maxstab
