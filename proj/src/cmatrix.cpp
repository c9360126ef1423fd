#include "maxstab/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace maxstab {

namespace {
constexpr int kStepHorizon = 4096;
constexpr std::size_t kTailDoublings = 3;
constexpr double kMinTailGain = 0.25;
}  // namespace

CMatrix::CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {
  if (n < 1) throw std::domain_error("CMatrix: dimension must be >= 1");
}

CMatrix::CMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (n < 1 || a_.size() != static_cast<std::size_t>(n * n))
    throw std::domain_error("CMatrix: entry count does not match n*n");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  n_ = static_cast<int>(rows.size());
  if (n_ < 1) throw std::domain_error("CMatrix: empty row list");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_) throw std::domain_error("CMatrix: rows must form a square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::companion(const CPoly& p) {
  const CPoly q = p.normalized();
  if (q.degree() < 1) throw std::domain_error("companion: degree must be >= 1");
  const int n = q.degree();
  const cplx lead = q[static_cast<std::size_t>(n)];
  CMatrix m(n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -q[static_cast<std::size_t>(i)] / lead;
  return m;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const cplx& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

cplx CMatrix::trace() const {
  cplx t{};
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.n() != b.n()) throw std::domain_error("mat_mul: dimension mismatch");
  const int n = a.n();
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cplx> mat_apply(const CMatrix& g, const std::vector<cplx>& v) {
  if (static_cast<int>(v.size()) != g.n()) throw std::domain_error("mat_apply: dimension mismatch");
  std::vector<cplx> r(v.size());
  for (int i = 0; i < g.n(); ++i) {
    cplx s{};
    for (int j = 0; j < g.n(); ++j) s += g(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

CMatrix mat_sub_scaled_identity(const CMatrix& g, cplx z) {
  CMatrix r = g;
  for (int i = 0; i < g.n(); ++i) r(i, i) -= z;
  return r;
}

cplx determinant(const CMatrix& g) {
  CMatrix a = g;
  const int n = a.n();
  cplx det{1.0};
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == cplx{}) return cplx{};
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      const cplx f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::optional<std::vector<cplx>> solve(const CMatrix& g, std::vector<cplx> b) {
  CMatrix a = g;
  const int n = a.n();
  if (static_cast<int>(b.size()) != n) throw std::domain_error("solve: size mismatch");
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == cplx{}) return std::nullopt;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
    }
    for (int r = c + 1; r < n; ++r) {
      const cplx f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(i)] = s / a(i, i);
  }
  return b;
}

cplx refine_eigenvalue(const CMatrix& g, cplx z, int iterations) {
  const int n = g.n();
  std::vector<cplx> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = cplx{1.0 + 0.1 * i, 0.05 * i};
  for (int it = 0; it < iterations; ++it) {
    const auto w = solve(mat_sub_scaled_identity(g, z), x);
    if (!w) break;
    // For x near an eigenvector, (G - zI)^{-1} x = x / (lambda - z).
    cplx xx{}, xw{};
    double nw = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      xx += std::conj(x[k]) * x[k];
      xw += std::conj(x[k]) * (*w)[k];
      nw += std::norm((*w)[k]);
    }
    if (xw == cplx{} || !(nw > 0.0) || !std::isfinite(nw)) break;
    const cplx dz = it == 0 ? cplx{} : xx / xw;
    nw = std::sqrt(nw);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (*w)[static_cast<std::size_t>(i)] / nw;
    z += dz;
    if (it > 0 && std::abs(dz) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

CPoly char_poly(const CMatrix& g) {
  // M_k = G M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(G M_k) / k.
  const int n = g.n();
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1.0;
  CMatrix m(n);
  for (int k = 1; k <= n; ++k) {
    CMatrix next = mat_mul(g, m);
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    m = std::move(next);
    const cplx t = mat_mul(g, m).trace();
    c[static_cast<std::size_t>(n - k)] = -t / static_cast<double>(k);
  }
  return CPoly(std::move(c));
}

RankResult matrix_rank(const CMatrix& a0, double rel, double norm_scale) {
  CMatrix a = a0;
  const int n = a.n();
  const double thr = rel * norm_scale;
  constexpr double band = 1e3;
  RankResult out;
  out.smallest_kept = INFINITY;
  for (int s = 0; s < n; ++s) {
    int pr = s, pc = s;
    double best = -1.0;
    for (int i = s; i < n; ++i)
      for (int j = s; j < n; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best <= thr) {
      out.largest_dropped = best;
      out.ambiguous = best > thr / band;
      break;
    }
    if (best < thr * band) out.ambiguous = true;
    out.smallest_kept = std::min(out.smallest_kept, best);
    for (int j = 0; j < n; ++j) std::swap(a(s, j), a(pr, j));
    for (int i = 0; i < n; ++i) std::swap(a(i, s), a(i, pc));
    for (int i = s + 1; i < n; ++i) {
      const cplx f = a(i, s) / a(s, s);
      for (int j = s; j < n; ++j) a(i, j) -= f * a(s, j);
    }
    ++out.rank;
  }
  return out;
}

std::vector<EigenReport> eigen_structure(const CMatrix& g, const std::vector<RootCluster>& roots,
                                         double unit_band) {
  std::vector<EigenReport> out;
  const double fn = std::max(g.frobenius(), 1e-300);
  for (const RootCluster& r : roots) {
    EigenReport e;
    e.value = r.value;
    e.algebraic_mult = r.multiplicity;
    e.on_unit_circle = std::abs(std::abs(r.value) - 1.0) <= unit_band;
    const RankResult rk = matrix_rank(mat_sub_scaled_identity(g, r.value), tol::rank, fn);
    e.geometric_mult = std::clamp(g.n() - rk.rank, 1, r.multiplicity);
    e.indeterminate = rk.ambiguous;
    e.defective = e.on_unit_circle && e.geometric_mult < e.algebraic_mult;
    out.push_back(e);
  }
  return out;
}

const char* to_string(GrowthKind k) {
  switch (k) {
    case GrowthKind::Bounded: return "bounded";
    case GrowthKind::LinearGrowth: return "linear_growth";
    case GrowthKind::ExponentialGrowth: return "exponential_growth";
  }
  return "?";
}

PowerReport power_bounded(const CMatrix& g, int horizon) {
  if (horizon < 64) throw std::domain_error("power_bounded: horizon must be >= 64");
  PowerReport out;
  const int n = g.n();
  CMatrix p = CMatrix::identity(n);
  double log_scale = 0.0;  // p holds G^k / exp(log_scale)
  auto rescale = [&](double f) {
    if (f > 1e100 || (f < 1e-100 && f > 0.0)) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) /= f;
      log_scale += std::log(f);
    }
  };
  // Stepping up to kStepHorizon (block maxima), repeated squaring beyond (point values).
  const int step_end = std::min(horizon, kStepHorizon);
  double block_max = -INFINITY;
  int next_mark = 1;
  for (int k = 1; k <= step_end; ++k) {
    p = mat_mul(g, p);
    const double f = p.frobenius();
    const double lf = (f > 0.0 ? std::log(f) : -INFINITY) + log_scale;
    if (!std::isfinite(f) || lf > 690.0) {
      out.kind = GrowthKind::ExponentialGrowth;
      return out;
    }
    rescale(f);
    block_max = std::max(block_max, lf);
    if (k == next_mark) {
      out.n.push_back(k);
      out.norm.push_back(block_max);  // stored as log for now
      block_max = -INFINITY;
      if (next_mark > step_end / 2) break;
      next_mark *= 2;
    }
  }
  while (out.n.back() <= horizon / 2) {
    p = mat_mul(p, p);
    log_scale *= 2.0;
    const double f = p.frobenius();
    const double lf = (f > 0.0 ? std::log(f) : -INFINITY) + log_scale;
    if (!std::isfinite(f) || lf > 690.0) {
      out.kind = GrowthKind::ExponentialGrowth;
      return out;
    }
    rescale(f);
    out.n.push_back(2 * out.n.back());
    out.norm.push_back(lf);
  }
  const std::size_t K = out.norm.size() - 1;
  std::vector<double> L = out.norm;
  for (double& v : out.norm) v = std::exp(v);

  if (!(L[K] > -460.0)) return out;  // decayed below 1e-200
  double earlier = -INFINITY;
  for (std::size_t j = 0; j < K; ++j) earlier = std::max(earlier, L[j]);
  if (L[K] <= earlier + std::log(1.01)) return out;
  // Growth must persist over the last doublings; saturating transients are bounded.
  for (std::size_t j = K - kTailDoublings + 1; j <= K; ++j)
    if (L[j] - L[j - 1] < kMinTailGain * std::log(2.0)) return out;

  const double n2 = out.n[K - 2];
  const double d1 = L[K - 1] - L[K - 2];
  const double d2 = L[K] - L[K - 1];
  out.log_rate = (d2 - d1) / n2;
  out.poly_order = (d1 - out.log_rate * n2) / std::log(2.0);
  if (out.log_rate > tol::growth)
    out.kind = GrowthKind::ExponentialGrowth;
  else if (out.poly_order > 0.5)
    out.kind = GrowthKind::LinearGrowth;
  return out;
}

}  // namespace maxstab
