#include <doctest.h>

#include "helpers.hpp"
#include "schottky/error.hpp"
#include "schottky/moebius.hpp"

using namespace schottky;

TEST_CASE("fixed points and multiplier round-trip") {
  PrecisionScope p(128);
  Complex q(Real("0.03"), Real("0.02"));
  auto a = ExtPoint::at(Complex(Real("0.5"), Real("-1")));
  auto b = ExtPoint::at(Complex(Real("2"), Real("0.25")));
  MoebiusMap m = from_fixed_points(a, b, q);
  CHECK(test::d(abs(multiplier(m) - q)) < 1e-30);
  FixedPointPair fp = fixed_points(m);
  CHECK(test::d(abs(fp.attractive.z - a.z)) < 1e-30);
  CHECK(test::d(abs(fp.repulsive.z - b.z)) < 1e-30);
  // The attractive point attracts.
  Complex z(Real(3), Real(1));
  for (int i = 0; i < 40; ++i) z = m.apply(z);
  CHECK(test::d(abs(z - a.z)) < 1e-30);
}

TEST_CASE("composition is associative projectively") {
  PrecisionScope p(128);
  MoebiusMap f{Complex(2), Complex(1), Complex(1), Complex(1)};
  MoebiusMap g{Complex(1), Complex(Real(0), Real(1)), Complex(0), Complex(3)};
  MoebiusMap h{Complex(Real("0.5")), Complex(0), Complex(Real(2)), Complex(1)};
  CHECK(projectively_equal(compose(compose(f, g), h), compose(f, compose(g, h)), pow2(-100)));
  CHECK(projectively_equal(compose(f, f.inverse()), MoebiusMap::identity(), pow2(-100)));
}

TEST_CASE("parabolic and elliptic maps are rejected") {
  PrecisionScope p(128);
  MoebiusMap parabolic{Complex(1), Complex(1), Complex(0), Complex(1)};
  CHECK_THROWS_AS(multiplier(parabolic), Error);
  MoebiusMap rotation{Complex(0), Complex(-1), Complex(1), Complex(0)};
  CHECK_THROWS_AS(multiplier(rotation), Error);
}

TEST_CASE("bundled groups are certified and normalized") {
  PrecisionScope p(128);
  for (const char* name : {"A1", "A2", "B", "R1"}) {
    MarkedSchottkyGroup g = test::group(name);
    SchottkyCertificate c = validate_schottky(g);
    CHECK(c.margin > 0);
    CHECK(is_normalized(g, pow2(-100)));
  }
}

TEST_CASE("normalize_marking conjugates to 0, inf, 1") {
  PrecisionScope p(128);
  MoebiusMap g1 = from_fixed_points(ExtPoint::at(Complex(2)), ExtPoint::at(Complex(-1)), Complex(Real("0.05")));
  MoebiusMap g2 = from_fixed_points(ExtPoint::at(Complex(5)), ExtPoint::at(Complex(7)), Complex(Real("0.04")));
  MarkedSchottkyGroup g = make_group({g1, g2});
  MarkedSchottkyGroup n = normalize_marking(g);
  CHECK(is_normalized(n, pow2(-100)));
  // Conjugation keeps multipliers.
  CHECK(test::d(abs(multiplier(n.generators[1]) - multiplier(g2))) < 1e-30);
}

TEST_CASE("disk images under a map stay disks") {
  PrecisionScope p(128);
  MoebiusMap m{Complex(1), Complex(2), Complex(Real("0.1")), Complex(1)};
  Disk dk{Complex(0), Real(1), false};
  Disk im = dk.image(m);
  for (int t = 0; t < 16; ++t) {
    double th = 2 * M_PI * t / 16;
    Complex z(Real(std::cos(th)), Real(std::sin(th)));
    CHECK(std::abs(test::d(im.boundary_gap(m.apply(z)))) < 1e-12);
  }
}
