#include <doctest.h>

#include <boost/math/constants/constants.hpp>

#include "helpers.hpp"
#include "schottky/constants.hpp"

using namespace schottky;

TEST_CASE("zeta'(-1) and the Glaisher constant") {
  PrecisionScope p(160);
  // Published values, 50 digits.
  Real zp("-0.16542114370045092921391966024278064276403638033520");
  Real A("1.2824271291006226368753425688697917277676889273250");
  CHECK(test::d(abs(zeta_prime_minus_one() - zp)) < 1e-45);
  CHECK(test::d(abs(log_glaisher() - log(A))) < 1e-45);
}

TEST_CASE("d_k") {
  CHECK(mumford_d(1) == 1);
  CHECK(mumford_d(2) == 13);
  CHECK(mumford_d(3) == 37);
}

TEST_CASE("c_g and c_{g;k} relations") {
  PrecisionScope p(128);
  // c_{g;k} / c_{g;k'} = exp((g - 1)(d_k - d_k')/3).
  for (int g : {2, 3, 4}) {
    Real r = c_gk(g, 3) / c_gk(g, 2);
    CHECK(test::d(abs(r / exp(Real(g - 1) * (37 - 13) / 3) - 1)) < 1e-33);
  }
  // Genus one: c_1 = (2π)^2 and c_{1;k} = 1.
  Real pi = boost::math::constants::pi<Real>();
  CHECK(test::d(abs(c_g(1) / (4 * pi * pi) - 1)) < 1e-35);
  CHECK(test::d(abs(c_gk(1, 5) - 1)) < 1e-35);
  Real a = deligne_a(2);
  CHECK(test::d(abs(a - 2 * (-12 * zeta_prime_minus_one() + Real(1) / 2))) < 1e-35);
}
