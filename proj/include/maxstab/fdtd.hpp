#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxstab/analyzer.hpp"
#include "maxstab/schemes.hpp"

namespace maxstab {

/// Per-step growth tolerance of the run verdict.
inline constexpr double kGrowthTol = 1e-6;

/// 1D state arrays in state_labels order, each of length J.
/// B[j] holds B at j + 1/2; LorentzJoseph keeps E at the previous step.
template <class T>
struct FieldStateT {
  Model model = Model::DebyeJoseph;
  int J = 0;
  std::vector<std::vector<T>> arrays;
};

using FieldState = FieldStateT<double>;
using ComplexFieldState = FieldStateT<cplx>;

/// Zero state; throws std::domain_error unless J >= 8.
template <class T>
FieldStateT<T> zero_state(Model model, int J);

/// Array f holds amplitudes[f] e^{i xi j}, xi = 2 pi k / J; one step maps the
/// amplitude vector through build_G at the same xi.
ComplexFieldState mode_state(Model model, int J, int k, const std::vector<cplx>& amplitudes);

/// Seeded uniform [-1, 1] value per array element.
FieldState noise_state(Model model, int J, std::uint64_t seed);

/// Every array set to cos(2 pi k j / J).
FieldState cosine_state(Model model, int J, int k);

/// One explicit time step, periodic in j.
template <class T>
void step(const SchemeParams& sp, FieldStateT<T>& s);

/// Sum of squared magnitudes over all arrays.
template <class T>
double energy(const FieldStateT<T>& s);

enum class RunVerdict { Decaying, Neutral, Growing };
const char* to_string(RunVerdict v);

struct RunInit {
  enum class Kind { Noise, Mode } kind = Kind::Noise;
  std::uint64_t seed = 1;
  int k = 1;  ///< wavenumber index for Kind::Mode
};

struct RunOptions {
  int J = 256;
  int steps = 10000;
  RunInit init;
};

struct RunReport {
  SchemeId id;
  SchemeParams sp;
  RunOptions options;
  std::vector<double> energy;  ///< energy[n] after n steps; energy[0] is the initial energy
  double growth = 1.0;         ///< exp of the least-squares slope of log energy over the final half
  RunVerdict verdict = RunVerdict::Neutral;
  bool aborted = false;        ///< non-finite or overflowing fields
  int steps_done = 0;
};

/// Growth above this factor of the initial energy aborts the run.
inline constexpr double kAbortEnergyRatio = 1e200;

/// Throws std::domain_error for 2D schemes, invalid parameters, J < 8 or steps < 1.
RunReport run(const SchemeId& id, const SchemeParams& sp, const RunOptions& opt = {});

/// Per-step growth factor from an energy series (final half, least squares on log energy).
double fitted_growth(const std::vector<double>& energy);
RunVerdict growth_verdict(double g);

struct EmpiricalThreshold {
  double value = 0.0;  ///< midpoint of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  bool growing_above = true;
  int runs = 0;
};

/// Bisection on one parameter using run verdicts (growing versus not) until the
/// bracket is narrower than `width`. Throws std::domain_error when the end points agree.
EmpiricalThreshold empirical_threshold(const SchemeId& id, const SchemeParams& sp, ParamAxis axis, double lo,
                                       double hi, const RunOptions& opt = {}, double width = 0.01);

}  // namespace maxstab
