#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "schottky/eichler.hpp"
#include "schottky/error.hpp"

using namespace schottky;

namespace {

double poly_dist(const Polynomial& a, const Polynomial& b) {
  double m = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    cdouble x = i < a.size() ? a[i] : 0.0, y = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

Polynomial random_poly(std::mt19937& rng, int k) {
  std::uniform_real_distribution<double> u(-1, 1);
  Polynomial p(2 * k - 1);
  for (auto& c : p) c = cdouble(u(rng), u(rng));
  return p;
}

}  // namespace

TEST_CASE("the weight 2 - 2k action is a right action") {
  PrecisionScope p(128);
  auto L = unimodular_letters(test::group("B"));
  std::mt19937 rng(3);
  for (int k : {2, 3}) {
    Polynomial f = random_poly(rng, k);
    for (const MatD& x : L)
      for (const MatD& y : L) CHECK(poly_dist(act(act(f, x, k), y, k), act(f, mul(x, y), k)) < 1e-9);
  }
}

TEST_CASE("polynomials are checked against the weight") {
  PrecisionScope p(128);
  auto L = unimodular_letters(test::group("B"));
  CHECK_THROWS_AS(act(Polynomial(4, 1.0), L[0], 2), Error);
}

TEST_CASE("cocycle extension and coboundaries") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  auto L = unimodular_letters(g);
  std::mt19937 rng(11);
  const int k = 2;
  Cocycle xi{k, {random_poly(rng, k), random_poly(rng, k)}, "random"};
  // ξ(γδ) = ξ(γ)·δ + ξ(δ).
  Polynomial lhs = cocycle_value(xi, Word{2, {1, 2}}, L);
  Polynomial rhs = act(xi.values[0], L[letter_code(2)], k);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += xi.values[1][i];
  CHECK(poly_dist(lhs, rhs) < 1e-12);
  CHECK(poly_dist(cocycle_value(xi, Word{2, {2, -2}}, L), Polynomial(3, 0.0)) < 1e-12);

  // A coboundary takes v·γ - v on every word.
  Polynomial v = random_poly(rng, k);
  Cocycle cb = coboundary(v, L, k);
  for (const Word& w : {Word{2, {1, -2, 1}}, Word{2, {-1, -1, 2}}, Word{2, {2, 1, -2, -1}}}) {
    MatD m;
    for (Letter l : w.letters) m = mul(m, L[letter_code(l)]);
    Polynomial expect = act(v, m, k);
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] -= v[i];
    CHECK(poly_dist(cocycle_value(cb, w, L), expect) < 1e-10);
  }
}

TEST_CASE("standard cocycles span the expected dimension") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  CHECK(standard_cocycles(g, 2).size() == 3);
  CHECK(standard_cocycles(g, 3).size() == 5);
}

TEST_CASE("Poincare series are automorphic") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  auto seeds = default_seeds(g, 2, 3);
  KDifferential psi = poincare_kdiff(g, 2, seeds[0], 7);
  auto samples = domain_samples(psi.group(), 8);
  double scale = 0;
  for (cdouble z : samples) scale = std::max(scale, std::abs(psi(z)));
  CHECK(automorphy_residual(psi, samples) < 1e-6 * scale);
}

TEST_CASE("seed validation") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  CHECK_THROWS_AS(poincare_kdiff(test::group("R1"), 2, Seed{}, 4), Error);
  Seed inside{{{cdouble(3, 3), 1}, {cdouble(-3, 2), 1}, {cdouble(2, -3), 1}}, 1.0, "domain"};
  try {
    poincare_kdiff(g, 2, inside, 4);
    FAIL("expected PoleInDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleInDomain);
  }
}

TEST_CASE("normalized basis is dual to the standard cocycles") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  NormalizedBasis nb = normalized_basis(g, 2, default_seeds(g, 2, 5), 6, 512);
  CHECK(nb.dim == 3);
  CHECK(nb.gram_residual < 1e-6);
  CHECK_THROWS_AS(normalized_basis(g, 2, default_seeds(g, 2, 2), 6, 256), Error);
}

TEST_CASE("pairing is linear, stable under node doubling and kills coboundaries") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  auto seeds = default_seeds(g, 2, 3);
  KDifferential psi = poincare_kdiff(g, 2, seeds[1], 6);
  auto xis = standard_cocycles(g, 2);
  const cdouble a(-1 / M_PI, 0);
  for (const Cocycle& xi : xis) {
    cdouble v = pairing(psi, xi, 256);
    CHECK(std::abs(pairing(psi.scaled(a), xi, 256) - a * v) <= 1e-14 * std::abs(v));
    CHECK(std::abs(pairing(psi, xi, 512) - v) < 1e-8 * (1 + std::abs(v)));
  }
  std::mt19937 rng(5);
  auto L = unimodular_letters(g);
  Cocycle cb = coboundary(random_poly(rng, 2), L, 2);
  double prev = 1e300;
  for (int len : {4, 5, 6}) {
    double c = std::abs(pairing(psi.with_max_len(len), cb, 512));
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("automorphy improves with truncation length") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  KDifferential psi = poincare_kdiff(g, 2, default_seeds(g, 2, 1)[0], 4);
  auto samples = domain_samples(psi.group(), 6);
  double prev = 1e300;
  for (int len : {4, 5, 6}) {
    double r = automorphy_residual(psi.with_max_len(len), samples);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("rescaling seeds leaves the normalized basis unchanged") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  // With exactly dim seeds the system is square and the solution scale-free.
  auto seeds = default_seeds(g, 2, 3);
  auto scaled = seeds;
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i].scale *= cdouble(1.0 + i, -0.5 * i);
  NormalizedBasis a = normalized_basis(g, 2, seeds, 5, 256), b = normalized_basis(g, 2, scaled, 5, 256);
  auto zs = domain_samples(*make_eichler_group(g), 3);
  for (int i = 0; i < a.dim; ++i) {
    auto va = a.basis[i].values(zs), vb = b.basis[i].values(zs);
    for (std::size_t n = 0; n < zs.size(); ++n) CHECK(std::abs(va[n] - vb[n]) <= 1e-9 * (1 + std::abs(va[n])));
  }
}
