#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace maxstab {

using cplx = std::complex<double>;

/// Numerical tolerances shared by the polynomial and matrix layers.
namespace tol {
inline constexpr double eq = 1e-9;         ///< |phi(0)| vs |phi*(0)| band, relative to max|c_k|
inline constexpr double trim = 1e-12;      ///< zero / leading-coefficient detection
inline constexpr double root = 1e-10;      ///< root residual acceptance
inline constexpr double cluster = 1e-7;    ///< minimum root clustering radius
inline constexpr double rank = 1e-8;       ///< rank threshold relative to the Frobenius norm
inline constexpr double growth = 1e-6;     ///< per-step exponential growth threshold
}  // namespace tol

/// Complex polynomial c_0 + c_1 z + ... + c_p z^p, ascending coefficient order.
///
/// The coefficient list is kept as given; normalized() trims trailing
/// near-zero coefficients. The zero polynomial has an empty list.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs);
  CPoly(std::initializer_list<cplx> coeffs);

  static CPoly from_real(const std::vector<double>& coeffs);
  /// Monic polynomial with the given roots.
  static CPoly from_roots(const std::vector<cplx>& roots);

  const std::vector<cplx>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }

  /// True for an empty coefficient list.
  bool is_zero() const { return c_.empty(); }
  /// len - 1 of the stored list; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double max_abs() const;

  /// Trailing coefficients with |c| <= rel * max|c_k| removed.
  CPoly normalized(double rel = tol::trim) const;
  /// Coefficients divided by max|c_k|.
  CPoly scaled_unit() const;

  CPoly operator*(const CPoly& o) const;
  CPoly operator+(const CPoly& o) const;
  CPoly operator-(const CPoly& o) const;
  CPoly operator*(cplx s) const;

  bool operator==(const CPoly& o) const { return c_ == o.c_; }

 private:
  std::vector<cplx> c_;
};

/// phi*(z) = conj(c_p) + conj(c_{p-1}) z + ... + conj(c_0) z^p, same formal length.
/// Throws std::domain_error on the zero polynomial.
CPoly conjugate_poly(const CPoly& p);

/// (phi*(0) phi(z) - phi(0) phi*(z)) / z, trimmed; zero polynomial when it vanishes.
CPoly schur_step(const CPoly& p);

cplx eval(const CPoly& p, cplx z);
CPoly derivative(const CPoly& p);

enum class PolyKind { Schur, SimpleVonNeumann, NonSimpleVonNeumann, HasRootOutside, Indeterminate };

const char* to_string(PolyKind k);

/// One comparison of the reduction chain.
struct ChainStep {
  enum class Action { Continue, RootOutside, ZeroNext, DegreeOne, Constant, Indeterminate };
  int depth = 0;           ///< number of derivative switches above this step
  int degree = 0;
  double abs_phi0 = 0.0;   ///< |phi_m(0)| after scaling to max|c_k| = 1
  double abs_phis0 = 0.0;  ///< |phi_m*(0)| after the same scaling
  Action action = Action::Continue;
};

const char* to_string(ChainStep::Action a);

struct PolyClass {
  PolyKind kind = PolyKind::Indeterminate;
  std::optional<cplx> witness_root;  ///< a root outside the closed disk when known
  std::string witness;               ///< marginal-quantity report for Indeterminate
  std::vector<ChainStep> trace;
};

/// Schur / simple von Neumann classification by the reduction chain.
/// Requires degree >= 1 after normalization (std::domain_error otherwise).
PolyClass classify(const CPoly& p);

struct RootCluster {
  cplx value;
  int multiplicity = 1;
};

struct RootsResult {
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;          ///< max of |p(r)| / (max|c_k| (1+|r|)^deg)
  std::vector<cplx> roots;            ///< all roots, with repetition
  std::vector<RootCluster> clusters;  ///< distinct roots with multiplicity
  std::string message;
};

/// Durand-Kerner iteration followed by multiplicity clustering.
/// Non-convergence is reported through converged = false, never thrown.
RootsResult roots(const CPoly& p);

/// Classification from clustered roots; `band` is the unit-circle half width.
PolyKind classify_by_roots(const RootsResult& r, double band);

/// Largest cluster modulus; 0 for an empty list.
double max_modulus(const RootsResult& r);

}  // namespace maxstab
