#include "maxstab/fdtd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace maxstab {

namespace {

int field_count(Model m) { return m == Model::DebyeJoseph || m == Model::DebyeYoung ? 3 : 4; }

void check_grid(int J) {
  if (J < 8) throw std::domain_error("grid size J must be at least 8, got " + std::to_string(J));
}

template <class T>
void check_state(const FieldStateT<T>& s) {
  check_grid(s.J);
  if (static_cast<int>(s.arrays.size()) != field_count(s.model))
    throw std::domain_error("state has the wrong number of arrays for " + std::string(to_string(s.model)));
  for (const auto& a : s.arrays)
    if (static_cast<int>(a.size()) != s.J) throw std::domain_error("state array length differs from J");
}

double magnitude2(double v) { return v * v; }
double magnitude2(cplx v) { return std::norm(v); }

template <class T>
bool all_finite(const FieldStateT<T>& s) {
  for (const auto& a : s.arrays)
    for (const T& v : a)
      if (!std::isfinite(magnitude2(v))) return false;
  return true;
}

}  // namespace

template <class T>
FieldStateT<T> zero_state(Model model, int J) {
  check_grid(J);
  FieldStateT<T> s;
  s.model = model;
  s.J = J;
  s.arrays.assign(field_count(model), std::vector<T>(J, T(0)));
  return s;
}

ComplexFieldState mode_state(Model model, int J, int k, const std::vector<cplx>& amplitudes) {
  ComplexFieldState s = zero_state<cplx>(model, J);
  if (static_cast<int>(amplitudes.size()) != field_count(model))
    throw std::domain_error("mode amplitudes must have one entry per state array");
  const double xi = 2.0 * std::numbers::pi * k / J;
  for (int j = 0; j < J; ++j) {
    const cplx phase = std::polar(1.0, xi * j);
    for (std::size_t f = 0; f < amplitudes.size(); ++f) s.arrays[f][j] = amplitudes[f] * phase;
  }
  return s;
}

FieldState noise_state(Model model, int J, std::uint64_t seed) {
  FieldState s = zero_state<double>(model, J);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& a : s.arrays)
    for (double& v : a) v = u(rng);
  return s;
}

FieldState cosine_state(Model model, int J, int k) {
  FieldState s = zero_state<double>(model, J);
  const double xi = 2.0 * std::numbers::pi * k / J;
  for (auto& a : s.arrays)
    for (int j = 0; j < J; ++j) a[j] = std::cos(xi * j);
  return s;
}

template <class T>
double energy(const FieldStateT<T>& s) {
  double e = 0.0;
  for (const auto& a : s.arrays)
    for (const T& v : a) e += magnitude2(v);
  return e;
}

template <class T>
void step(const SchemeParams& sp, FieldStateT<T>& s) {
  check_state(s);
  const int J = s.J;
  const double l = sp.lambda_x;
  const double d = sp.delta;
  const double w = sp.omega;
  const double es = sp.eps_s_rel;
  const double a = sp.alpha();
  auto next = [J](int j) { return j + 1 == J ? 0 : j + 1; };
  auto prev = [J](int j) { return j == 0 ? J - 1 : j - 1; };

  std::vector<T>& B = s.arrays[0];
  std::vector<T>& E = s.arrays[1];
  // -lambda times the backward difference of B, before and after the B update.
  std::vector<T> g_old(J);
  for (int j = 0; j < J; ++j) g_old[j] = -l * (B[j] - B[prev(j)]);
  for (int j = 0; j < J; ++j) B[j] -= l * (E[next(j)] - E[j]);
  std::vector<T> g(J);
  for (int j = 0; j < J; ++j) g[j] = -l * (B[j] - B[prev(j)]);

  switch (s.model) {
    case Model::DebyeJoseph: {
      std::vector<T>& D = s.arrays[2];
      for (int j = 0; j < J; ++j) {
        const T dn = D[j] + g[j];
        E[j] = ((1.0 - d * es) * E[j] + (1.0 + d) * dn - (1.0 - d) * D[j]) / (1.0 + d * es);
        D[j] = dn;
      }
      break;
    }
    case Model::DebyeYoung: {
      std::vector<T>& P = s.arrays[2];
      for (int j = 0; j < J; ++j) {
        const T pn = ((1.0 - d) * P[j] + 2.0 * d * a * E[j]) / (1.0 + d);
        E[j] = ((1.0 - d * a) * E[j] + g[j] + 2.0 * d * pn) / (1.0 + d * a);
        P[j] = pn;
      }
      break;
    }
    case Model::LorentzJoseph: {
      std::vector<T>& Ep = s.arrays[2];
      std::vector<T>& D = s.arrays[3];
      const double lead = 1.0 + d + w * es;
      for (int j = 0; j < J; ++j) {
        const T dn = D[j] + g[j];
        const T dp = D[j] - g_old[j];
        const T en = (2.0 * E[j] - (1.0 - d + w * es) * Ep[j] + (dn - 2.0 * D[j] + dp) + d * (dn - dp) +
                      w * (dn + dp)) /
                     lead;
        Ep[j] = E[j];
        E[j] = en;
        D[j] = dn;
      }
      break;
    }
    case Model::LorentzKashiwa: {
      std::vector<T>& P = s.arrays[2];
      std::vector<T>& Jc = s.arrays[3];
      const double dk = 1.0 + d + 0.5 * w * es;
      for (int j = 0; j < J; ++j) {
        const T jn = ((2.0 - dk) * Jc[j] + 2.0 * w * a * E[j] + w * a * g[j] - 2.0 * w * P[j]) / dk;
        E[j] = E[j] + g[j] - 0.5 * Jc[j] - 0.5 * jn;
        P[j] = P[j] + 0.5 * Jc[j] + 0.5 * jn;
        Jc[j] = jn;
      }
      break;
    }
    case Model::LorentzYoung: {
      std::vector<T>& P = s.arrays[2];
      std::vector<T>& Jh = s.arrays[3];
      for (int j = 0; j < J; ++j) {
        const T jn = ((1.0 - d) * Jh[j] + 2.0 * w * a * E[j] - 2.0 * w * P[j]) / (1.0 + d);
        P[j] += jn;
        E[j] = E[j] + g[j] - jn;
        Jh[j] = jn;
      }
      break;
    }
  }
}

template FieldStateT<double> zero_state<double>(Model, int);
template FieldStateT<cplx> zero_state<cplx>(Model, int);
template void step<double>(const SchemeParams&, FieldStateT<double>&);
template void step<cplx>(const SchemeParams&, FieldStateT<cplx>&);
template double energy<double>(const FieldStateT<double>&);
template double energy<cplx>(const FieldStateT<cplx>&);

const char* to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::Decaying: return "decaying";
    case RunVerdict::Neutral: return "neutral";
    case RunVerdict::Growing: return "growing";
  }
  return "?";
}

double fitted_growth(const std::vector<double>& energy) {
  const std::size_t n = energy.size();
  if (n < 2) return 1.0;
  const std::size_t first = n / 2 == n - 1 ? n - 2 : n / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(n - first);
  for (std::size_t i = first; i < n; ++i) {
    const double x = static_cast<double>(i);
    const double y = std::log(std::max(energy[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  if (den <= 0.0) return 1.0;
  return std::exp((m * sxy - sx * sy) / den);
}

RunVerdict growth_verdict(double g) {
  if (g > 1.0 + kGrowthTol) return RunVerdict::Growing;
  if (g < 1.0 - kGrowthTol) return RunVerdict::Decaying;
  return RunVerdict::Neutral;
}

RunReport run(const SchemeId& id, const SchemeParams& sp, const RunOptions& opt) {
  id.validate();
  if (id.dim != 1) throw std::domain_error("FDTD runs are one-dimensional");
  sp.validate(id);
  check_grid(opt.J);
  if (opt.steps < 1) throw std::domain_error("steps must be at least 1");

  RunReport r;
  r.id = id;
  r.sp = sp;
  r.options = opt;
  FieldState s = opt.init.kind == RunInit::Kind::Noise ? noise_state(id.model, opt.J, opt.init.seed)
                                                       : cosine_state(id.model, opt.J, opt.init.k);
  const double e0 = energy(s);
  r.energy.reserve(opt.steps + 1);
  r.energy.push_back(e0);
  const double limit = e0 * kAbortEnergyRatio;
  for (int n = 0; n < opt.steps; ++n) {
    step(sp, s);
    const double e = energy(s);
    if (!std::isfinite(e) || !all_finite(s) || e > limit) {
      r.aborted = true;
      break;
    }
    r.energy.push_back(e);
    ++r.steps_done;
  }
  if (e0 == 0.0) {
    r.growth = 1.0;
  } else {
    r.growth = fitted_growth(r.energy);
  }
  r.verdict = r.aborted ? RunVerdict::Growing : growth_verdict(r.growth);
  return r;
}

EmpiricalThreshold empirical_threshold(const SchemeId& id, const SchemeParams& sp, ParamAxis axis, double lo,
                                       double hi, const RunOptions& opt, double width) {
  if (!(lo < hi)) throw std::domain_error("threshold bracket must satisfy lo < hi");
  if (!(width > 0.0)) throw std::domain_error("threshold width must be positive");
  EmpiricalThreshold out;
  auto growing_at = [&](double v) {
    SchemeParams p = sp;
    set_param(p, id, axis, v);
    ++out.runs;
    return run(id, p, opt).verdict == RunVerdict::Growing;
  };
  const bool g_lo = growing_at(lo);
  const bool g_hi = growing_at(hi);
  if (g_lo == g_hi) {
    std::ostringstream os;
    os << "bracket [" << lo << ", " << hi << "] does not straddle a threshold in " << to_string(axis)
       << ": both ends are " << (g_lo ? "growing" : "not growing");
    throw std::domain_error(os.str());
  }
  out.growing_above = g_hi;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (growing_at(mid) == g_hi)
      hi = mid;
    else
      lo = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace maxstab
