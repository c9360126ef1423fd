#include "maxstab/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace maxstab {

CPoly::CPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

CPoly::CPoly(std::initializer_list<cplx> coeffs) : c_(coeffs) {}

CPoly CPoly::from_real(const std::vector<double>& coeffs) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  return CPoly(std::move(c));
}

CPoly CPoly::from_roots(const std::vector<cplx>& roots) {
  CPoly p{cplx{1.0}};
  for (const cplx& r : roots) p = p * CPoly{-r, cplx{1.0}};
  return p;
}

double CPoly::max_abs() const {
  double m = 0.0;
  for (const cplx& c : c_) m = std::max(m, std::abs(c));
  return m;
}

CPoly CPoly::normalized(double rel) const {
  const double m = max_abs();
  if (m == 0.0) return CPoly{};
  std::vector<cplx> c = c_;
  while (!c.empty() && std::abs(c.back()) <= rel * m) c.pop_back();
  return CPoly(std::move(c));
}

CPoly CPoly::scaled_unit() const {
  const double m = max_abs();
  if (m == 0.0) return CPoly{};
  std::vector<cplx> c = c_;
  for (cplx& x : c) x /= m;
  return CPoly(std::move(c));
}

CPoly CPoly::operator*(const CPoly& o) const {
  if (is_zero() || o.is_zero()) return CPoly{};
  std::vector<cplx> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return CPoly(std::move(r));
}

CPoly CPoly::operator+(const CPoly& o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = (*this)[k] + o[k];
  return CPoly(std::move(r));
}

CPoly CPoly::operator-(const CPoly& o) const { return *this + o * cplx{-1.0}; }

CPoly CPoly::operator*(cplx s) const {
  std::vector<cplx> r = c_;
  for (cplx& x : r) x *= s;
  return CPoly(std::move(r));
}

CPoly conjugate_poly(const CPoly& p) {
  if (p.is_zero()) throw std::domain_error("conjugate_poly: zero polynomial");
  const auto& c = p.coeffs();
  std::vector<cplx> r(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) r[k] = std::conj(c[c.size() - 1 - k]);
  return CPoly(std::move(r));
}

namespace {

// Numerator of the chain step divided by z, without trimming.
std::vector<cplx> raw_step(const std::vector<cplx>& c) {
  const std::size_t p = c.size() - 1;
  const cplx ps0 = std::conj(c[p]);
  const cplx p0 = c[0];
  std::vector<cplx> r(p);
  for (std::size_t k = 1; k <= p; ++k) r[k - 1] = ps0 * c[k] - p0 * std::conj(c[p - k]);
  return r;
}

}  // namespace

CPoly schur_step(const CPoly& p) {
  const CPoly n = p.normalized();
  if (n.is_zero()) throw std::domain_error("schur_step: zero polynomial");
  if (n.degree() == 0) return CPoly{};
  const double scale = n.max_abs();
  std::vector<cplx> r = raw_step(n.coeffs());
  const double cut = tol::trim * scale * scale;
  while (!r.empty() && std::abs(r.back()) <= cut) r.pop_back();
  return CPoly(std::move(r));
}

cplx eval(const CPoly& p, cplx z) {
  cplx acc{};
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

CPoly derivative(const CPoly& p) {
  if (p.size() <= 1) return CPoly{};
  std::vector<cplx> r(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) r[k - 1] = p[k] * static_cast<double>(k);
  return CPoly(std::move(r));
}

const char* to_string(PolyKind k) {
  switch (k) {
    case PolyKind::Schur: return "Schur";
    case PolyKind::SimpleVonNeumann: return "SimpleVonNeumann";
    case PolyKind::NonSimpleVonNeumann: return "NonSimpleVonNeumann";
    case PolyKind::HasRootOutside: return "HasRootOutside";
    case PolyKind::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(ChainStep::Action a) {
  switch (a) {
    case ChainStep::Action::Continue: return "continue";
    case ChainStep::Action::RootOutside: return "root-outside";
    case ChainStep::Action::ZeroNext: return "zero-next:derivative";
    case ChainStep::Action::DegreeOne: return "degree-one";
    case ChainStep::Action::Constant: return "constant";
    case ChainStep::Action::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

// Chain properties of one polynomial: Schur, simple von Neumann, von Neumann.
struct Props {
  bool schur = false;
  bool simple = false;
  bool vn = false;
  bool indeterminate = false;
};

Props chain(const CPoly& input, int depth, PolyClass& out) {
  const CPoly p = input.normalized().scaled_unit();
  ChainStep st;
  st.depth = depth;
  st.degree = p.degree();
  if (p.degree() <= 0) {
    st.action = ChainStep::Action::Constant;
    out.trace.push_back(st);
    return {true, true, true, false};
  }
  const auto& c = p.coeffs();
  const std::size_t d = c.size() - 1;
  const double a = std::abs(c[0]);
  const double b = std::abs(c[d]);
  st.abs_phi0 = a;
  st.abs_phis0 = b;

  if (d == 1) {
    st.action = ChainStep::Action::DegreeOne;
    out.trace.push_back(st);
    if (b - a > tol::eq) return {true, true, true, false};
    if (a - b > tol::eq) {
      out.witness_root = -c[0] / c[1];
      return {};
    }
    return {false, true, true, false};
  }

  if (b - a > tol::eq) {
    st.action = ChainStep::Action::Continue;
    out.trace.push_back(st);
    std::vector<cplx> next = raw_step(c);
    next.back() = cplx{b * b - a * a};  // exact leading coefficient of the reduced polynomial
    return chain(CPoly(std::move(next)), depth, out);
  }
  if (a - b > tol::eq) {
    st.action = ChainStep::Action::RootOutside;
    out.trace.push_back(st);
    return {};
  }

  const std::vector<cplx> next = raw_step(c);
  double mx = 0.0;
  for (const cplx& x : next) mx = std::max(mx, std::abs(x));
  if (mx <= tol::trim) {
    st.action = ChainStep::Action::ZeroNext;
    out.trace.push_back(st);
    const Props r = chain(derivative(p), depth + 1, out);
    return {false, r.schur, r.vn, r.indeterminate};
  }
  st.action = ChainStep::Action::Indeterminate;
  out.trace.push_back(st);
  std::ostringstream os;
  os << "degree " << d << " at depth " << depth << ": |phi(0)|=" << a << " |phi*(0)|=" << b
     << " within tau_eq, next step max coefficient " << mx << " above tau_trim";
  out.witness = os.str();
  Props r;
  r.indeterminate = true;
  return r;
}

}  // namespace

PolyClass classify(const CPoly& p) {
  const CPoly n = p.normalized();
  if (n.degree() < 1) throw std::domain_error("classify: degree must be >= 1");
  PolyClass out;
  const Props r = chain(n, 0, out);
  if (r.indeterminate)
    out.kind = PolyKind::Indeterminate;
  else if (r.schur)
    out.kind = PolyKind::Schur;
  else if (r.simple)
    out.kind = PolyKind::SimpleVonNeumann;
  else if (r.vn)
    out.kind = PolyKind::NonSimpleVonNeumann;
  else
    out.kind = PolyKind::HasRootOutside;
  return out;
}

namespace {

constexpr int kMaxIterations = 500;
constexpr int kStallIterations = 20;
constexpr int kNewtonSteps = 3;
constexpr std::uint64_t kSeed = 0x6d61787374616231ULL;
constexpr double kMaxClusterRadius = 1e-3;
constexpr double kResidualNoise = 1e-14;
// Noisy roots of a multiple root need not surround it; the polished centre may lie outside their hull.
constexpr double kPolishReach = 10.0;

// Coefficients of p(c + t) in powers of t (Taylor shift by repeated Horner).
std::vector<cplx> taylor_at(const std::vector<cplx>& a, cplx c) {
  std::vector<cplx> t = a;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) t[k] += c * t[k + 1];
  return t;
}

double eval_scale(const std::vector<cplx>& a, cplx c) {
  double s = 0.0;
  const double r = std::abs(c);
  double pw = 1.0;
  for (const cplx& x : a) {
    s += std::abs(x) * pw;
    pw *= r;
  }
  return s;
}

cplx polish_multiple(const std::vector<cplx>& a, cplx c, int m, double radius) {
  // Newton on the (m-1)-th derivative, which has a simple root at an m-fold root.
  CPoly p(a);
  for (int k = 0; k + 1 < m; ++k) p = derivative(p);
  const CPoly dp = derivative(p);
  cplx z = c;
  for (int it = 0; it < 4; ++it) {
    const cplx den = eval(dp, z);
    if (den == cplx{}) break;
    z -= eval(p, z) / den;
  }
  return std::abs(z - c) <= radius ? z : c;
}

// Roots g form an m-fold root up to noise when, at the polished centre c,
// every lower Taylor term t_k r^k is at rounding level (r: distance to the farthest root).
bool cluster_consistent(const std::vector<cplx>& a, const std::vector<cplx>& g, cplx centroid, double spread) {
  if (spread <= tol::cluster * (1.0 + std::abs(centroid))) return true;
  if (spread > kMaxClusterRadius * (1.0 + std::abs(centroid))) return false;
  const int m = static_cast<int>(g.size());
  const cplx c = polish_multiple(a, centroid, m, kPolishReach * spread);
  double r = 0.0;
  for (const cplx& x : g) r = std::max(r, std::abs(x - c));
  const std::vector<cplx> t = taylor_at(a, c);
  const double limit = kResidualNoise * eval_scale(a, c);
  double pw = 1.0;
  for (int k = 0; k < m; ++k) {
    if (std::abs(t[static_cast<std::size_t>(k)]) * pw > limit) return false;
    pw *= r;
  }
  return true;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& a, const std::vector<cplx>& z) {
  std::vector<std::vector<cplx>> groups;
  for (const cplx& r : z) groups.push_back({r});
  auto centroid = [](const std::vector<cplx>& g) {
    cplx s{};
    for (const cplx& x : g) s += x;
    return s / static_cast<double>(g.size());
  };
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    struct Pair {
      double d;
      std::size_t i, j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = i + 1; j < groups.size(); ++j)
        pairs.push_back({std::abs(centroid(groups[i]) - centroid(groups[j])), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
    for (const Pair& pr : pairs) {
      std::vector<cplx> g = groups[pr.i];
      g.insert(g.end(), groups[pr.j].begin(), groups[pr.j].end());
      const cplx c = centroid(g);
      double spread = 0.0;
      for (const cplx& x : g) spread = std::max(spread, std::abs(x - c));
      if (cluster_consistent(a, g, c, spread)) {
        groups[pr.i] = std::move(g);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(pr.j));
        merged = true;
        break;
      }
    }
  }
  std::vector<RootCluster> out;
  for (const auto& g : groups) {
    const int m = static_cast<int>(g.size());
    cplx c = centroid(g);
    if (m > 1) {
      double spread = 0.0;
      for (const cplx& x : g) spread = std::max(spread, std::abs(x - c));
      c = polish_multiple(a, c, m, kPolishReach * spread + tol::cluster * (1.0 + std::abs(c)));
    }
    out.push_back({c, m});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) {
    if (std::abs(x.value) != std::abs(y.value)) return std::abs(x.value) > std::abs(y.value);
    return std::arg(x.value) < std::arg(y.value);
  });
  return out;
}

}  // namespace

RootsResult roots(const CPoly& p0) {
  const CPoly p = p0.normalized();
  if (p.degree() < 1) throw std::domain_error("roots: degree must be >= 1");
  const std::size_t n = static_cast<std::size_t>(p.degree());
  std::vector<cplx> a = p.coeffs();
  const cplx lead = a[n];
  for (cplx& x : a) x /= lead;
  double amax = 0.0;
  for (std::size_t k = 0; k < n; ++k) amax = std::max(amax, std::abs(a[k]));
  const double radius = 1.0 + amax;
  const double amax_all = std::max(amax, 1.0);

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4 +
                      0.1 * u(rng);
    z[k] = std::polar(radius * (1.0 + 0.05 * u(rng)), th);
  }

  const CPoly monic(a);
  auto residual = [&](cplx r) {
    return std::abs(eval(monic, r)) / (amax_all * std::pow(1.0 + std::abs(r), static_cast<double>(n)));
  };
  auto all_residuals_ok = [&] {
    double worst = 0.0;
    for (const cplx& r : z) worst = std::max(worst, residual(r));
    return worst;
  };

  RootsResult out;
  // Stop when the residual stagnates; near multiple roots the correction stalls long before it does.
  double best = INFINITY;
  int since_best = 0;
  int it = 0;
  for (it = 1; it <= kMaxIterations; ++it) {
    double corr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx den{1.0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      if (den == cplx{}) den = cplx{1e-300};
      const cplx dz = eval(monic, z[k]) / den;
      z[k] -= dz;
      corr = std::max(corr, std::abs(dz) / (1.0 + std::abs(z[k])));
    }
    if (!std::isfinite(corr)) break;
    if (corr < 1e-15) break;
    const double res = all_residuals_ok();
    if (res < best * 0.5) {
      best = res;
      since_best = 0;
    } else if (++since_best > kStallIterations && res <= tol::root) {
      break;
    }
  }
  // Newton on each root; a step is kept only when it lowers the residual.
  const CPoly dmonic = derivative(monic);
  for (cplx& r : z) {
    for (int k = 0; k < kNewtonSteps; ++k) {
      const cplx d = eval(dmonic, r);
      if (d == cplx{}) break;
      const cplx next = r - eval(monic, r) / d;
      if (!(std::abs(eval(monic, next)) < std::abs(eval(monic, r)))) break;
      r = next;
    }
  }
  out.iterations = std::min(it, kMaxIterations);
  out.max_residual = all_residuals_ok();
  bool finite = true;
  for (const cplx& r : z) finite = finite && std::isfinite(r.real()) && std::isfinite(r.imag());
  out.converged = finite && out.max_residual <= tol::root;
  if (!out.converged) {
    std::ostringstream os;
    os << "Durand-Kerner did not converge: residual " << out.max_residual << " after " << out.iterations
       << " iterations";
    out.message = os.str();
    return out;
  }
  out.roots = z;
  out.clusters = cluster_roots(a, z);
  return out;
}

PolyKind classify_by_roots(const RootsResult& r, double band) {
  if (!r.converged) return PolyKind::Indeterminate;
  bool any_unit = false;
  bool multiple_unit = false;
  for (const RootCluster& c : r.clusters) {
    const double m = std::abs(c.value);
    if (m > 1.0 + band) return PolyKind::HasRootOutside;
    if (m >= 1.0 - band) {
      any_unit = true;
      if (c.multiplicity > 1) multiple_unit = true;
    }
  }
  if (!any_unit) return PolyKind::Schur;
  return multiple_unit ? PolyKind::NonSimpleVonNeumann : PolyKind::SimpleVonNeumann;
}

double max_modulus(const RootsResult& r) {
  double m = 0.0;
  for (const RootCluster& c : r.clusters) m = std::max(m, std::abs(c.value));
  return m;
}

}  // namespace maxstab
