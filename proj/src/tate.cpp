#include "schottky/tate.hpp"

#include "schottky/error.hpp"

namespace schottky {

namespace {

void check_order(int order) {
  if (order < 0) fail(ErrorCode::InvalidParameter, "series order must be non-negative");
}

template <class S>
S mul_impl(const S& a, const S& b) {
  const std::size_t n = std::min(a.size(), b.size());
  S out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class S>
int first_nonzero(const S& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace

ZSeries series_mul(const ZSeries& a, const ZSeries& b) { return mul_impl(a, b); }
QSeries series_mul(const QSeries& a, const QSeries& b) { return mul_impl(a, b); }

ZSeries divisor_power_series(int k, int order) {
  check_order(order);
  if (k < 0) fail(ErrorCode::InvalidParameter, "divisor power must be non-negative");
  ZSeries s(order + 1, 0);
  for (int d = 1; d <= order; ++d) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (int n = d; n <= order; n += d) s[n] += dk;
  }
  return s;
}

TateCoefficients tate_coefficients(int order) {
  ZSeries s3 = divisor_power_series(3, order);
  ZSeries s5 = divisor_power_series(5, order);
  TateCoefficients t;
  t.a4.resize(order + 1);
  t.a6.resize(order + 1);
  for (int n = 0; n <= order; ++n) {
    t.a4[n] = -5 * s3[n];
    mpz_class num = 5 * s3[n] + 7 * s5[n];
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 12))
      fail(ErrorCode::IntegralityViolation, "a6 coefficient " + std::to_string(n) + " is not integral");
    mpz_class q;
    mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), 12);
    t.a6[n] = -q;
  }
  return t;
}

WeierstrassCheck weierstrass_check(const mpq_class& z0, int order) {
  check_order(order);
  if (z0 == 0 || z0 == 1) fail(ErrorCode::PoleAtZ0, "z0 must differ from 0 and 1");
  const int N = order;
  std::vector<mpq_class> zp(N + 1), zm(N + 1);
  zp[0] = zm[0] = 1;
  mpq_class zinv = 1 / z0;
  for (int m = 1; m <= N; ++m) {
    zp[m] = zp[m - 1] * z0;
    zm[m] = zm[m - 1] * zinv;
  }
  WeierstrassCheck w;
  w.x.assign(N + 1, 0);
  w.y.assign(N + 1, 0);
  mpq_class one_minus = 1 - z0;
  w.x[0] = z0 / (one_minus * one_minus);
  w.y[0] = z0 * z0 / (one_minus * one_minus * one_minus);
  // Terms n >= 1 of the sums over n in Z, each expanded geometrically:
  //   q^n z/(1-q^n z)^2       = sum_m m z^m q^{nm}
  //   q^n z^-1/(1-q^n z^-1)^2 = sum_m m z^-m q^{nm}
  //   q^n/(1-q^n)^2           = sum_m m q^{nm}
  //   (q^n z)^2/(1-q^n z)^3   = sum_m C(m,2) z^m q^{nm}
  //   q^n z^-1/(1-q^n z^-1)^3 = sum_m C(m+1,2) z^-m q^{nm}, entering Y with a minus sign
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; n * m <= N; ++m) {
      const int e = n * m;
      w.x[e] += m * (zp[m] + zm[m] - 2);
      mpq_class c2(static_cast<long>(m) * (m - 1) / 2), c2p(static_cast<long>(m) * (m + 1) / 2);
      w.y[e] += c2 * zp[m] - c2p * zm[m] + m;
    }
  }
  TateCoefficients t = tate_coefficients(N);
  QSeries a4(N + 1), a6(N + 1);
  for (int n = 0; n <= N; ++n) {
    a4[n] = t.a4[n];
    a6[n] = t.a6[n];
  }
  QSeries yy = series_mul(w.y, w.y);
  QSeries xy = series_mul(w.x, w.y);
  QSeries xxx = series_mul(series_mul(w.x, w.x), w.x);
  QSeries a4x = series_mul(a4, w.x);
  w.residual.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    w.residual[n] = yy[n] + xy[n] - xxx[n] - a4x[n] - a6[n];
    w.residual[n].canonicalize();
  }
  w.first_nonzero = first_nonzero(w.residual);
  w.exact_zero = w.first_nonzero < 0;
  return w;
}

ZSeries euler_product(int start, int power, int order) {
  check_order(order);
  if (start < 1 || power < 0) fail(ErrorCode::InvalidParameter, "bad Euler product parameters");
  ZSeries p(order + 1, 0);
  p[0] = 1;
  for (int m = start; m <= order; ++m)
    for (int r = 0; r < power; ++r)
      for (int i = order; i >= m; --i) p[i] -= p[i - m];  // multiply by (1 - y^m)
  return p;
}

TelescopeCheck telescoping_check(int k, int order) {
  check_order(order);
  if (k < 1) fail(ErrorCode::InvalidParameter, "k must be at least 1");
  TelescopeCheck t;
  t.lhs = euler_product(k, 2, order);
  for (int j = 1; j < k && j <= order; ++j)
    for (int r = 0; r < 2; ++r)
      for (int i = order; i >= j; --i) t.lhs[i] -= t.lhs[i - j];
  t.rhs = euler_product(1, 2, order);
  ZSeries diff(order + 1);
  for (int n = 0; n <= order; ++n) diff[n] = t.lhs[n] - t.rhs[n];
  t.first_nonzero = first_nonzero(diff);
  t.exact_zero = t.first_nonzero < 0;
  return t;
}

}  // namespace schottky
