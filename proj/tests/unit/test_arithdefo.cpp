#include <doctest.h>

#include "helpers.hpp"
#include "schottky/arithdefo.hpp"
#include "schottky/error.hpp"
#include "schottky/products.hpp"
#include "schottky/tate.hpp"

using namespace schottky;

namespace {

MultiSeries from_univariate(const ZSeries& e, int degree) {
  MultiSeries out(2, degree);
  for (int n = 0; n <= degree; ++n) out.add_term(MultiSeries::key({n, 0}), mpq_class(e[n]));
  return out;
}

}  // namespace

TEST_CASE("generator multipliers are the formal variables") {
  ArithConfig cfg = make_arith_config(2, {mpq_class(3)}, 8);
  CHECK(word_multiplier_series(Word{2, {1}}, cfg) == MultiSeries::variable(2, 8, 0));
  CHECK(word_multiplier_series(Word{2, {2}}, cfg) == MultiSeries::variable(2, 8, 1));
  CHECK(word_multiplier_series(Word{2, {-2}}, cfg) == MultiSeries::variable(2, 8, 1));
}

TEST_CASE("word multipliers solve the multiplier equation and are divisible") {
  ArithConfig cfg = make_arith_config(2, {mpq_class(5, 2)}, 8);
  for (const Word& w : {Word{2, {1, 2}}, Word{2, {1, -2}}, Word{2, {1, 1, -2}}, Word{2, {1, -2, -2, -1, 2}}}) {
    MultiSeries q = word_multiplier_series(w, cfg);
    CHECK(multiplier_equation_residual(w, cfg, q).is_zero());
    CHECK(divisible_by_word_monomial(q, w));
    CHECK(q.min_degree() == static_cast<int>(w.size()));
  }
  CHECK_THROWS_AS(word_multiplier_series(Word{2, {1, 2, -1}}, cfg), Error);
}

TEST_CASE("series converge to the specialized multipliers") {
  PrecisionScope p(128);
  std::vector<mpq_class> y{mpq_class(1, 50), mpq_class(1, 70)};
  for (const Word& w : {Word{2, {1, 2}}, Word{2, {1, -2, -2}}, Word{2, {2, 1, -2, 1}}}) {
    double prev = 0;
    for (int D : {8, 10, 12}) {
      ArithConfig cfg = make_arith_config(2, {mpq_class(3)}, D);
      Real series = to_real(evaluate(word_multiplier_series(w, cfg), y));
      double err = test::d(abs(multiplier(specialize_word(w, cfg, y)) - Complex(series)));
      // Dropped terms have degree > D and y ~ 1/50, so each two degrees gain well over 20x.
      if (prev > 0) CHECK(err < prev / 20);
      prev = err;
    }
    CHECK(prev < 1e-14);
  }
}

TEST_CASE("f1 series matches the numeric product at small multipliers") {
  PrecisionScope p(128);
  const int D = 10;
  ArithConfig cfg = make_arith_config(2, {mpq_class(3)}, D);
  std::vector<mpq_class> y{mpq_class(1, 200), mpq_class(1, 300)};
  MarkedSchottkyGroup g = make_group({specialize_generator(cfg, 1, y[0]), specialize_generator(cfg, 2, y[1])});
  Complex numeric = f1(class_spectrum(g, D), D).value;
  Real series = to_real(evaluate(f1_series(cfg), y));
  CHECK(test::d(abs(numeric - Complex(series))) < 1e-15);
}

TEST_CASE("products at y2 = 0 collapse to the rank one Euler product") {
  const int D = 9;
  ArithConfig cfg = make_arith_config(2, {mpq_class(-2)}, D);
  MultiSeries expect = from_univariate(euler_product(1, 2, D), D);
  CHECK(specialize(f1_series(cfg), {std::nullopt, mpq_class(0)}) == expect);
  // The F_k prefactor telescopes against the missing factors.
  CHECK(specialize(fk_series(cfg, 3), {std::nullopt, mpq_class(0)}) == expect);
}

TEST_CASE("coincident fixed points are rejected") {
  CHECK_THROWS_AS(validate(make_arith_config(2, {mpq_class(1)}, 4)), Error);
  CHECK_THROWS_AS(validate(make_arith_config(2, {mpq_class(0)}, 4)), Error);
}
