#include <doctest.h>

#include <cmath>

#include "schottky/error.hpp"
#include "schottky/tate.hpp"

using namespace schottky;

namespace {

long sigma(long n, int k) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += std::lround(std::pow(static_cast<double>(d), k));
  return s;
}

// X, Y of the Tate parametrization summed directly over n in Z, in long double.
// y_sign is the sign of the q^n z^-1/(1 - q^n z^-1)^3 term for n >= 1.
struct XY {
  long double x, y;
};

XY tate_xy(long double q, long double z, int y_sign) {
  long double x = 0, y = 0;
  for (int n = -60; n <= 60; ++n) {
    long double w = std::pow(q, n) * z;
    x += w / ((1 - w) * (1 - w));
    if (n >= 1) x -= 2 * std::pow(q, n) / ((1 - std::pow(q, n)) * (1 - std::pow(q, n)));
    if (n >= 0) {
      y += w * w / ((1 - w) * (1 - w) * (1 - w));
    } else {
      long double u = std::pow(q, -n) / z;
      y += y_sign * u / ((1 - u) * (1 - u) * (1 - u));
    }
    if (n >= 1) y += std::pow(q, n) / ((1 - std::pow(q, n)) * (1 - std::pow(q, n)));
  }
  return {x, y};
}

long double curve_residual(long double q, long double z, int y_sign) {
  long double a4 = 0, a6 = 0, qn = 1;
  for (int n = 1; n <= 60; ++n) {
    qn *= q;
    a4 += -5.0L * sigma(n, 3) * qn;
    a6 += -(5.0L * sigma(n, 3) + 7.0L * sigma(n, 5)) / 12.0L * qn;
  }
  XY p = tate_xy(q, z, y_sign);
  return p.y * p.y + p.x * p.y - p.x * p.x * p.x - a4 * p.x - a6;
}

}  // namespace

TEST_CASE("a4 and a6 match divisor sums") {
  TateCoefficients t = tate_coefficients(60);
  for (long n = 1; n <= 60; ++n) {
    CHECK(t.a4[n] == -5 * sigma(n, 3));
    CHECK(t.a6[n] * 12 == -(5 * sigma(n, 3) + 7 * sigma(n, 5)));
  }
  CHECK(t.a4[1] == -5);
  CHECK(t.a6[1] == -1);
  CHECK(t.a6[2] == -23);
}

TEST_CASE("the Weierstrass residual vanishes exactly") {
  for (const char* z : {"2", "-3", "5/7", "-11/4"}) {
    WeierstrassCheck w = weierstrass_check(mpq_class(z), 25);
    CHECK(w.exact_zero);
    CHECK(w.first_nonzero == -1);
  }
  CHECK_THROWS_AS(weierstrass_check(mpq_class(1), 10), Error);
  CHECK_THROWS_AS(weierstrass_check(mpq_class(0), 10), Error);
}

TEST_CASE("numeric Tate curve: the minus sign solves the equation, the plus sign does not") {
  CHECK(std::fabs(static_cast<double>(curve_residual(0.01L, 2.0L, -1))) < 1e-12);
  CHECK(std::fabs(static_cast<double>(curve_residual(0.05L, -0.7L, -1))) < 1e-12);
  CHECK(std::fabs(static_cast<double>(curve_residual(0.01L, 2.0L, +1))) > 1e-4);
}

TEST_CASE("exact series agree with the numeric parametrization") {
  WeierstrassCheck w = weierstrass_check(mpq_class(2), 30);
  long double q = 0.01L, x = 0, y = 0, qn = 1;
  for (int n = 0; n <= 30; ++n, qn *= q) {
    x += w.x[n].get_d() * qn;
    y += w.y[n].get_d() * qn;
  }
  XY p = tate_xy(q, 2.0L, -1);
  CHECK(std::fabs(static_cast<double>(x - p.x)) < 1e-12);
  CHECK(std::fabs(static_cast<double>(y - p.y)) < 1e-12);
}

TEST_CASE("Euler product against the pentagonal number theorem") {
  ZSeries e = euler_product(1, 1, 100);
  ZSeries pent(101, 0);
  for (long j = -20; j <= 20; ++j) {
    long g = j * (3 * j - 1) / 2;
    if (g <= 100) pent[g] += (j % 2 == 0) ? 1 : -1;
  }
  CHECK(e == pent);
}

TEST_CASE("telescoping") {
  for (int k : {1, 2, 3, 4, 7}) CHECK(telescoping_check(k, 50).exact_zero);
}

TEST_CASE("series multiplication") {
  ZSeries a{1, 2, 3}, b{1, -1, 0};
  ZSeries c = series_mul(a, b);
  CHECK(c == ZSeries{1, 1, 1});
  ZSeries s1 = divisor_power_series(1, 12);
  CHECK(s1[12] == 28);
  CHECK(s1[0] == 0);
}
