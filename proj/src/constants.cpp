#include "schottky/constants.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include "schottky/error.hpp"

namespace schottky {

namespace {
Real log_glaisher_raw();
}

Real log_glaisher() {
  const unsigned target = working_precision_bits();
  Real result;
  {
    // The partial sum is about n^2 log n, so guard bits absorb the cancellation.
    PrecisionScope guard(target + 48);
    result = log_glaisher_raw();
  }
  return round_to_working(result);
}

namespace {

Real log_glaisher_raw() {
  using boost::multiprecision::log;
  const unsigned bits = working_precision_bits();
  const long n = std::max<long>(32, bits / 2);
  Real s(0);
  for (long j = 2; j <= n; ++j) s += Real(j) * log(Real(j));
  Real N(n);
  Real ln = log(N);
  Real result = s - (N * N / 2 + N / 2 + Real(1) / 12) * ln + N * N / 4;
  // Remaining Euler-Maclaurin corrections B_{2m} (2m-3)! / ((2m)! N^{2m-2}).
  Real cut = pow2(-static_cast<int>(bits) - 8);
  Real n2 = N * N;
  Real npow = n2;  // N^{2m-2} for m = 2
  for (int m = 2; 2 * m < 6 * n; ++m) {
    Real b = boost::math::bernoulli_b2n<Real>(m);
    // (2m-3)!/(2m)! = 1/((2m)(2m-1)(2m-2))
    Real term = b / (Real(2 * m) * (2 * m - 1) * (2 * m - 2) * npow);
    result += term;
    if (boost::multiprecision::abs(term) < cut) break;
    npow *= n2;
  }
  return result;
}

}  // namespace

Real zeta_prime_minus_one() { return Real(1) / 12 - log_glaisher(); }

long long mumford_d(int k) { return 6LL * k * k - 6LL * k + 1; }

Real deligne_a(int g, int n) {
  if (g < 0 || n < 0) fail(ErrorCode::InvalidParameter, "g and n must be non-negative");
  return Real(2 * g - 2 + n) * (-12 * zeta_prime_minus_one() + Real(1) / 2);
}

Real c_g(int g) {
  if (g < 1) fail(ErrorCode::InvalidParameter, "genus must be positive");
  Real two_pi = 2 * boost::math::constants::pi<Real>();
  Real e = Real(g - 1) * (24 * zeta_prime_minus_one() + 1) / 6;
  return boost::multiprecision::pow(two_pi, 2 * g) * boost::multiprecision::exp(e);
}

Real c_gk(int g, int k) {
  if (g < 1 || k < 1) fail(ErrorCode::InvalidParameter, "genus and weight must be positive");
  Real e = Real(g - 1) * (24 * zeta_prime_minus_one() + Real(2 * mumford_d(k) - 1)) / 6;
  return boost::multiprecision::exp(e);
}

}  // namespace schottky
