#pragma once

#include <vector>

#include <gmpxx.h>

namespace schottky {

// Truncated power series in q: coefficient n of q^n, n = 0..N.
using ZSeries = std::vector<mpz_class>;
using QSeries = std::vector<mpq_class>;

ZSeries series_mul(const ZSeries& a, const ZSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);

// s_k(q) = sum_n n^k q^n/(1 - q^n) = sum_n sigma_k(n) q^n.
ZSeries divisor_power_series(int k, int order);

struct TateCoefficients {
  ZSeries a4;  // -5 s_3
  ZSeries a6;  // -(5 s_3 + 7 s_5)/12
};

// Throws IntegralityViolation if 5 s_3 + 7 s_5 fails to be divisible by 12.
TateCoefficients tate_coefficients(int order);

struct WeierstrassCheck {
  QSeries x, y;      // X(z0), Y(z0)
  QSeries residual;  // Y^2 + XY - X^3 - a4 X - a6
  bool exact_zero = false;
  int first_nonzero = -1;
};

// Substitutes the rational point z0 into the Tate parametrization and checks
// the curve equation coefficient by coefficient through q^order.
WeierstrassCheck weierstrass_check(const mpq_class& z0, int order);

struct TelescopeCheck {
  ZSeries lhs;  // (1-y)^2...(1-y^{k-1})^2 prod_{m>=0}(1-y^{k+m})^2
  ZSeries rhs;  // prod_{m>=0}(1-y^{1+m})^2
  bool exact_zero = false;
  int first_nonzero = -1;
};

TelescopeCheck telescoping_check(int k, int order);

// prod_{m>=start}(1 - y^m)^power through y^order.
ZSeries euler_product(int start, int power, int order);

}  // namespace schottky
