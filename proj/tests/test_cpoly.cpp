#include <random>

#include "doctest.h"
#include "maxstab/cpoly.hpp"

using namespace maxstab;

namespace {
CPoly R(std::vector<double> c) { return CPoly::from_real(c); }

bool same(const CPoly& a, const CPoly& b, double tol = 1e-14) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}
}  // namespace

TEST_CASE("conjugate polynomial") {
  CHECK(same(conjugate_poly(R({0, 1})), R({1, 0})));
  CHECK(same(conjugate_poly(R({1, 0, 1})), R({1, 0, 1})));
  CHECK(same(conjugate_poly(R({-0.8, 1.9, -2.1, 1.2})), R({1.2, -2.1, 1.9, -0.8})));
  const CPoly c{cplx{1, 2}, cplx{0, -1}, cplx{3, 0.5}};
  const CPoly cc = conjugate_poly(c);
  CHECK(cc[0] == std::conj(c[2]));
  CHECK(conjugate_poly(cc) == c);
  CHECK_THROWS_AS(conjugate_poly(CPoly{}), std::domain_error);
}

TEST_CASE("schur step") {
  CHECK(same(schur_step(R({0, 1})), R({1})));
  CHECK(schur_step(R({1, 0, 0, 1})).is_zero());
  CHECK(same(schur_step(R({-0.8, 1.9, -2.1, 1.2})), R({0.6, -1.0, 0.8}), 1e-14));
  // self-inversive with a unit-modulus factor
  const cplx u = std::polar(1.0, 0.7);
  const CPoly h{cplx{0.3, 0.4}, cplx{1.5, -0.2}};
  const CPoly s = h + conjugate_poly(h) * u;
  CHECK(schur_step(s).is_zero());
}

TEST_CASE("eval and derivative") {
  CHECK(std::abs(eval(R({1, -2, 1}), 1.0)) == 0.0);
  CHECK(same(derivative(R({1, -2, 3, -2, 1})), R({-2, 6, -6, 4})));
  CHECK(derivative(R({5})).is_zero());
}

TEST_CASE("normalization") {
  const CPoly p = R({1, 2, 1e-14}).normalized();
  CHECK(p.degree() == 1);
  CHECK(R({0, 0}).normalized().is_zero());
  CHECK(R({0, 0}).normalized().degree() == -1);
}

TEST_CASE("classify examples") {
  CHECK(classify(R({-0.5, 1})).kind == PolyKind::Schur);
  CHECK(classify(R({1, 0, 1})).kind == PolyKind::SimpleVonNeumann);
  CHECK(classify(R({1, -2, 1})).kind == PolyKind::NonSimpleVonNeumann);
  CHECK(classify(R({-0.5, 0.5, 2.5, 1.5})).kind == PolyKind::NonSimpleVonNeumann);
  CHECK(classify(R({-0.8, 1.9, -2.1, 1.2})).kind == PolyKind::Schur);
  const PolyClass out = classify(R({-3, 1}));
  CHECK(out.kind == PolyKind::HasRootOutside);
  REQUIRE(out.witness_root.has_value());
  CHECK(std::abs(*out.witness_root - 3.0) < 1e-14);
  CHECK(classify(R({2, 1, 1})).kind == PolyKind::HasRootOutside);
  CHECK_THROWS_AS(classify(R({2})), std::domain_error);
  CHECK_FALSE(classify(R({-0.8, 1.9, -2.1, 1.2})).trace.empty());
}

TEST_CASE("roots") {
  RootsResult r = roots(R({1, 0, 1}));
  REQUIRE(r.converged);
  REQUIRE(r.clusters.size() == 2);
  for (const auto& c : r.clusters) CHECK(std::abs(std::abs(c.value) - 1.0) < 1e-12);
  r = roots(R({1, -2, 1}));
  REQUIRE(r.converged);
  REQUIRE(r.clusters.size() == 1);
  CHECK(r.clusters[0].multiplicity == 2);
  CHECK(std::abs(r.clusters[0].value - 1.0) < 1e-12);
  r = roots(R({-0.8, 1.9, -2.1, 1.2}));
  REQUIRE(r.converged);
  CHECK(r.roots.size() == 3);
  CHECK(max_modulus(r) < 1.0);
  // distinct roots whose pairwise centroids sit on a zero of p''
  r = roots(R({1, 0, 0, 0, 1}));
  REQUIRE(r.converged);
  CHECK(r.clusters.size() == 4);
  for (const auto& c : r.clusters) CHECK(std::abs(std::abs(c.value) - 1.0) < 1e-12);
  // triple root on the circle
  r = roots(CPoly::from_roots({cplx{0, 1}, cplx{0, 1}, cplx{0, 1}, cplx{0.2, 0}}));
  REQUIRE(r.converged);
  CHECK(r.clusters.size() == 2);
}

TEST_CASE("classify agrees with the root oracle on random polynomials") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(1, 6);
  int indet = 0, checked = 0;
  for (int t = 0; t < 2000; ++t) {
    std::vector<cplx> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& x : c) x = {u(rng), u(rng)};
    const CPoly p(c);
    const PolyClass pc = classify(p);
    const RootsResult rr = roots(p);
    REQUIRE(rr.converged);
    if (pc.kind == PolyKind::Indeterminate) {
      ++indet;
      continue;
    }
    ++checked;
    const PolyKind want = classify_by_roots(rr, 1e-9);
    CHECK(pc.kind == want);
  }
  CHECK(indet < 10);
  CHECK(checked > 1900);
}
