#pragma once

#include <optional>
#include <vector>

#include "maxstab/cpoly.hpp"

namespace maxstab {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n);
  CMatrix(int n, std::vector<cplx> entries);
  /// Rows given as nested lists; throws std::domain_error unless square.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(int n);
  /// Companion matrix whose characteristic polynomial is the monic version of p.
  static CMatrix companion(const CPoly& p);

  int n() const { return n_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  cplx operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<cplx>& entries() const { return a_; }

  double frobenius() const;
  cplx trace() const;

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
std::vector<cplx> mat_apply(const CMatrix& g, const std::vector<cplx>& v);
/// G - z I.
CMatrix mat_sub_scaled_identity(const CMatrix& g, cplx z);

/// Determinant by partial-pivot elimination (independent of char_poly).
cplx determinant(const CMatrix& g);

/// Solution of G x = b by partial-pivot elimination; nullopt when G is singular.
std::optional<std::vector<cplx>> solve(const CMatrix& g, std::vector<cplx> b);

/// Eigenvalue of G nearest to z by shifted inverse iteration.
cplx refine_eigenvalue(const CMatrix& g, cplx z, int iterations = 8);

/// det(Z I - G) via Faddeev-LeVerrier; monic of degree n.
CPoly char_poly(const CMatrix& g);

struct RankResult {
  int rank = 0;
  bool ambiguous = false;  ///< some pivot fell inside the decision band around the threshold
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
};

/// Rank by complete-pivot elimination with threshold rel * ||A||_F.
RankResult matrix_rank(const CMatrix& a, double rel, double norm_scale);

struct EigenReport {
  cplx value;
  int algebraic_mult = 1;
  int geometric_mult = 1;
  bool on_unit_circle = false;
  bool defective = false;      ///< geometric < algebraic on the unit circle
  bool indeterminate = false;  ///< rank decision inside the tolerance band
};

/// Per distinct eigenvalue: geometric multiplicity from n - rank(G - zI).
std::vector<EigenReport> eigen_structure(const CMatrix& g, const std::vector<RootCluster>& roots,
                                         double unit_band = tol::eq);

enum class GrowthKind { Bounded, LinearGrowth, ExponentialGrowth };

const char* to_string(GrowthKind k);

struct PowerReport {
  GrowthKind kind = GrowthKind::Bounded;
  double poly_order = 0.0;  ///< fitted exponent of n
  double log_rate = 0.0;    ///< fitted per-step log growth
  std::vector<int> n;       ///< sampled powers 1, 2, 4, ...
  std::vector<double> norm; ///< block-maximum of ||G^k||_F for k in (n/2, n]; point value past 4096
};

/// Growth classification of ||G^n||_F up to `horizon` (>= 64): stepping to 4096, repeated squaring beyond.
PowerReport power_bounded(const CMatrix& g, int horizon = 4096);

}  // namespace maxstab
