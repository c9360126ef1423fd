#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "maxstab/cpoly.hpp"
#include "maxstab/schemes.hpp"

namespace testutil {

using maxstab::cplx;
using maxstab::CPoly;

/// Max coefficient difference after dividing both by their leading coefficients,
/// relative to the largest monic coefficient.
inline double rel_diff_up_to_scale(const CPoly& a, const CPoly& b) {
  if (a.degree() != b.degree()) return INFINITY;
  const std::size_t n = a.size();
  const cplx la = a[n - 1], lb = b[n - 1];
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx x = a[k] / la, y = b[k] / lb;
    num = std::max(num, std::abs(x - y));
    den = std::max(den, std::max(std::abs(x), std::abs(y)));
  }
  return num / den;
}

struct Sample {
  maxstab::SchemeParams sp;
  maxstab::Mode mode;
};

/// Random parameters inside the documented domain.
inline Sample random_sample(std::mt19937_64& rng, const maxstab::SchemeId& id) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sample s;
  s.sp.lambda_x = 0.05 + 1.2 * u(rng);
  s.sp.lambda_y = id.dim == 2 ? 0.05 + 1.2 * u(rng) : 0.0;
  s.sp.delta = 2.0 * u(rng);
  s.sp.omega = maxstab::is_lorentz(id.model) ? 3.0 * u(rng) : 0.0;
  s.sp.eps_s_rel = 1.0 + 5.0 * u(rng);
  s.mode.xi_x = 2.0 * M_PI * u(rng);
  s.mode.xi_y = id.dim == 2 ? 2.0 * M_PI * u(rng) : 0.0;
  return s;
}

inline std::vector<maxstab::SchemeId> all_geometries() {
  std::vector<maxstab::SchemeId> out;
  for (maxstab::Model m : maxstab::kAllModels) {
    out.push_back({m, 1, maxstab::Polarization::None});
    out.push_back({m, 2, maxstab::Polarization::TEz});
    out.push_back({m, 2, maxstab::Polarization::TMz});
  }
  return out;
}

}  // namespace testutil
