#include <doctest.h>

#include "helpers.hpp"
#include "schottky/error.hpp"
#include "schottky/numeric.hpp"

using namespace schottky;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("-1.25e-3") == mpq_class(-1, 800));
  CHECK(parse_rational("3/4") == mpq_class(3, 4));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
}

TEST_CASE("decimal strings round-trip") {
  PrecisionScope p(128);
  Real x = Real(1) / 3;
  CHECK(parse_real(to_string(x)) == x);
  Real y = -pow2(-90) * 7;
  CHECK(parse_real(to_string(y)) == y);
}

TEST_CASE("precision scopes nest") {
  PrecisionScope a(128);
  CHECK(working_precision_bits() == 128);
  {
    PrecisionScope b(256);
    CHECK(working_precision_bits() == 256);
  }
  CHECK(working_precision_bits() == 128);
}

TEST_CASE("log1m against log") {
  PrecisionScope p(128);
  for (const char* s : {"1e-30", "0.001", "0.3", "-0.2"}) {
    Real x(s);
    CHECK(test::d(abs(log1m(x) - log(1 - x))) < 1e-36);
  }
  Complex z(Real("0.01"), Real("0.02"));
  CHECK(test::d(abs(log1m(z) - log(Complex(1) - z))) < 1e-36);
}

TEST_CASE("compensated sums") {
  PrecisionScope p(128);
  CompensatedSum s;
  s.add(Real(1));
  for (int i = 0; i < 1000; ++i) s.add(pow2(-140));
  s.add(Real(-1));
  CHECK(s.value() == pow2(-140) * 1000);
}

TEST_CASE("complex arithmetic") {
  PrecisionScope p(128);
  Complex a(Real(1), Real(2)), b(Real(-3), Real("0.5"));
  Complex c = a * b / b;
  CHECK(test::d(abs(c - a)) < 1e-36);
  CHECK(test::d(abs(exp(log(a)) - a)) < 1e-36);
  CHECK(test::d(abs(sqrt(a) * sqrt(a) - a)) < 1e-36);
  CHECK(test::d(abs(pow(a, 5) - a * a * a * a * a)) < 1e-33);
}
