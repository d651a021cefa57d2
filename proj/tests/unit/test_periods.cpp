#include <doctest.h>

#include "helpers.hpp"
#include "schottky/error.hpp"
#include "schottky/periods.hpp"

using namespace schottky;

TEST_CASE("contour integral of 1/(z - c) is 2 pi i") {
  DiskD d{cdouble(0.3, -0.2), 0.7, false};
  cdouble v = contour_integral([&](cdouble z) { return 1.0 / (z - d.center); }, d, 64, true);
  CHECK(std::abs(v - cdouble(0, 2 * M_PI)) < 1e-13);
  cdouble w = contour_integral([&](cdouble z) { return 1.0 / (z - d.center); }, d, 64, false);
  CHECK(std::abs(w + cdouble(0, 2 * M_PI)) < 1e-13);
}

TEST_CASE("Laurent evaluation agrees with the direct sum") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  DifferentialEvaluator ev(g, 1, 6);
  auto disks = ev.disks();
  for (const auto& dk : disks)
    for (int t = 0; t < 12; ++t) {
      double th = 2 * M_PI * t / 12 + 0.1;
      double r = dk.exterior ? dk.radius * 0.9 : dk.radius * 1.1;
      cdouble z = dk.center + r * cdouble(std::cos(th), std::sin(th));
      cdouble a = ev(z), b = ev.direct(z);
      CHECK(std::abs(a - b) <= 1e-11 * (1 + std::abs(b)));
    }
}

TEST_CASE("normalization on a real group") {
  PrecisionScope p(128);
  NormalizationCheck n = check_normalization(test::group("A2"), 10, 1024);
  CHECK(n.max_error < 1e-8);
}

TEST_CASE("rank one period is log q / 2 pi i") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("R1");
  PeriodMatrix pm = period_matrix(g, 6, 512);
  cdouble q = multiplier(g.generators[0]).to_cdouble();
  CHECK(std::abs(std::exp(cdouble(0, 2 * M_PI) * pm.tau[0][0]) - q) < 1e-10);
  CHECK(pm.im_positive_definite);
}

TEST_CASE("period matrix is symmetric with positive imaginary part") {
  PrecisionScope p(128);
  for (const char* name : {"A1", "B"}) {
    PeriodMatrix pm = period_matrix(test::group(name), 8, 1024);
    CHECK(pm.asymmetry < 1e-8);
    CHECK(pm.im_positive_definite);
    CHECK(pm.tau_sym[0][1] == pm.tau_sym[1][0]);
    for (const auto& path : pm.paths) CHECK(path.clearance >= 0);
  }
}

TEST_CASE("groups without a certificate are refused") {
  PrecisionScope p(128);
  // Overlapping isometric circles: multipliers too large for the configuration.
  MoebiusMap g1 = from_fixed_points(ExtPoint::at(Complex(0)), ExtPoint::inf(), Complex(Real("0.9")));
  MoebiusMap g2 = from_fixed_points(ExtPoint::at(Complex(1)), ExtPoint::at(Complex(Real("1.01"))), Complex(Real("0.9")));
  MarkedSchottkyGroup g = make_group({g1, g2});
  CHECK_THROWS_AS(certificate_disks(g), Error);
}
