#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxstab/cmatrix.hpp"
#include "maxstab/cpoly.hpp"
#include "maxstab/schemes.hpp"

namespace maxstab {

/// Ordered from best to worst; aggregation keeps the maximum.
enum class VerdictKind { SchurStable, SimpleVNStable, PowerBoundedStable, Indeterminate, Unstable };

enum class VerdictReason {
  AllRootsInside,
  UnitRootsSimple,
  MultipleUnitRootNonDefective,
  RootOutsideUnitDisk,
  DefectiveUnitRoot,
  ToleranceBoundary
};

const char* to_string(VerdictKind k);
const char* to_string(VerdictReason r);
bool is_stable(VerdictKind k);

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::SchurStable;
  VerdictReason reason = VerdictReason::AllRootsInside;
  double worst_root_modulus = 0.0;          ///< NaN when the root oracle failed
  std::optional<cplx> defective_eigenvalue;
  double q = 0.0;                           ///< witnessing mode
  Mode mode;
  std::string detail;

  /// e.g. "stable (Schur)" or "unstable (defective unit root)".
  std::string summary() const;
};

/// Half width of the unit-circle band used when reading clustered roots.
inline constexpr double kUnitBand = 1e-7;

/// Verdict ladder for one Fourier mode.
StabilityVerdict analyze_mode(const SchemeId& id, const SchemeParams& sp, const Mode& m);

/// q values {0, q_max k / K} plus the special values 2, 4, 2w/(1+w), 2w, 4w/(2+w) inside (0, q_max].
std::vector<double> default_q_grid(const SchemeId& id, const SchemeParams& sp, int K = 64);

/// Modes for default_q_grid; in 2D the axis corners (pi, 0) and (0, pi) are added.
std::vector<Mode> default_mode_grid(const SchemeId& id, const SchemeParams& sp, int K = 64);

/// Worst verdict over the grid. Throws std::domain_error on an empty grid.
StabilityVerdict analyze_scheme(const SchemeId& id, const SchemeParams& sp, const std::vector<Mode>& grid);
StabilityVerdict analyze_scheme(const SchemeId& id, const SchemeParams& sp);

/// Returns true when `b` is strictly worse than `a` for aggregation.
bool worse(const StabilityVerdict& b, const StabilityVerdict& a);

// ---------------------------------------------------------------------------
// Sweeps

/// Sweepable parameter: lambda (sets lambda_x and, in 2D, lambda_y), lambda_x,
/// lambda_y, delta, omega, eps_s.
enum class ParamAxis { Lambda, LambdaX, LambdaY, Delta, Omega, EpsS };

const char* to_string(ParamAxis a);
std::optional<ParamAxis> parse_axis(const std::string& s);
void set_param(SchemeParams& sp, const SchemeId& id, ParamAxis a, double v);
double get_param(const SchemeParams& sp, ParamAxis a);

struct Axis {
  ParamAxis param = ParamAxis::Lambda;
  std::vector<double> values;
};

/// "name=a:b:step" (inclusive of b up to rounding) or "name=v1,v2,...".
Axis parse_axis_spec(const std::string& spec);

struct MapCell {
  std::vector<double> coords;  ///< one value per axis
  StabilityVerdict verdict;
  ConditionResult closed_form;
};

/// Stability flip between two neighbouring cells along one axis.
struct Transition {
  std::size_t axis = 0;
  std::size_t cell_lo = 0;  ///< index into cells
  std::size_t cell_hi = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct StabilityMap {
  SchemeId id;
  SchemeParams base;
  std::vector<Axis> axes;
  std::vector<MapCell> cells;  ///< row-major, last axis fastest
  std::vector<Transition> transitions;
};

/// One analyze_scheme call per grid point; cells run in parallel.
/// An empty axis list or any empty axis yields an empty map.
StabilityMap sweep(const SchemeId& id, const SchemeParams& base, const std::vector<Axis>& axes, int K = 64);

// ---------------------------------------------------------------------------
// Thresholds

struct ThresholdResult {
  double value = 0.0;  ///< midpoint of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  bool stable_below = true;
  int evaluations = 0;
};

/// Bisection on one parameter until the bracket is narrower than `width`.
/// The endpoints must differ in stability (std::domain_error otherwise).
ThresholdResult find_threshold(const SchemeId& id, const SchemeParams& sp, ParamAxis axis, double lo, double hi,
                               double width = 1e-3, int K = 64);

}  // namespace maxstab
