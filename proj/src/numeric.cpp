#include "schottky/numeric.hpp"

#include <cctype>
#include <cstdlib>
#include <mpfr.h>

#include "schottky/error.hpp"

namespace schottky {

namespace {

unsigned g_bits = kDefaultPrecisionBits;

unsigned digits10_for_bits(unsigned bits) {
  unsigned d = 1;
  while (boost::multiprecision::detail::digits10_2_2(d) < bits) ++d;
  return d;
}

struct InitDefault {
  InitDefault() { Real::default_precision(digits10_for_bits(kDefaultPrecisionBits)); }
} g_init_default;

}  // namespace

unsigned working_precision_bits() { return g_bits; }

void set_working_precision_bits(unsigned bits) {
  if (bits < 24 || bits > 100000) fail(ErrorCode::InvalidParameter, "precision bits out of range");
  g_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(Real::default_precision()), saved_bits_(g_bits) {
  set_working_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() {
  g_bits = saved_bits_;
  Real::default_precision(saved_digits10_);
}

Real pow2(int e) {
  Real r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

Real round_to_working(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm avoids overflow in |o|^2.
  if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
    Real t = o.im / o.re;
    Real den = o.re + o.im * t;
    Real r = (re + im * t) / den;
    im = (im - re * t) / den;
    re = std::move(r);
  } else {
    Real t = o.re / o.im;
    Real den = o.re * t + o.im;
    Real r = (re * t + im) / den;
    im = (im * t - re) / den;
    re = std::move(r);
  }
  return *this;
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex();
  Real r = abs(z);
  Real t = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return Complex(t, z.im / (2 * t));
  Real s = z.im < 0 ? Real(-t) : t;
  return Complex(boost::multiprecision::abs(z.im) / (2 * t), s);
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex log(const Complex& z) {
  return Complex(boost::multiprecision::log(abs(z)), arg(z));
}

Complex log1m(const Complex& x) {
  if (x.im == 0) return Complex(log1m(x.re));
  Real ax = abs(x);
  if (ax == 0) return Complex();
  if (ax > pow2(-16)) return log(Complex(1) - x);
  Real cut = pow2(-static_cast<int>(g_bits) - 4);
  Complex sum, p = x;
  Real mag = ax;
  for (long j = 1; mag > cut; ++j) {
    Complex t = p;
    t.re /= j;
    t.im /= j;
    sum -= t;
    p *= x;
    mag *= ax;
  }
  return sum;
}

Real log1m(const Real& x) {
  if (x == 0) return Real(0);
  Real ax = boost::multiprecision::abs(x);
  if (ax > pow2(-16)) return boost::multiprecision::log1p(-x);
  Real cut = pow2(-static_cast<int>(g_bits) - 4);
  Real sum(0), p = x;
  for (long j = 1; boost::multiprecision::abs(p) > cut; ++j) {
    sum -= p / j;
    p *= x;
  }
  return sum;
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1), base = z;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Complex from_cdouble(cdouble z) { return Complex(Real(z.real()), Real(z.imag())); }

void mul_into(Complex& out, const Complex& x, const Complex& y, Real& scratch) {
  out.re = x.re;
  out.re *= y.re;
  scratch = x.im;
  scratch *= y.im;
  out.re -= scratch;
  out.im = x.re;
  out.im *= y.im;
  scratch = x.im;
  scratch *= y.re;
  out.im += scratch;
}

void CompensatedSum::add(const Real& x) {
  t_ = sum_;
  t_ += x;
  if (boost::multiprecision::abs(sum_) >= boost::multiprecision::abs(x)) {
    comp_ += (sum_ - t_) + x;
  } else {
    comp_ += (x - t_) + sum_;
  }
  sum_ = t_;
}

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorCode::ParseError, "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class num = parse_rational(s.substr(0, slash));
    mpq_class den = parse_rational(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    mpq_class q = num / den;
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_dot) --scale;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail(ErrorCode::ParseError, "malformed number '" + text + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail(ErrorCode::ParseError, "malformed number '" + text + "'");
    char* end = nullptr;
    std::string ex = s.substr(i + 1);
    long e = std::strtol(ex.c_str(), &end, 10);
    if (ex.empty() || *end != '\0' || e > 100000 || e < -100000)
      fail(ErrorCode::ParseError, "malformed exponent in '" + text + "'");
    scale += e;
  }
  mpz_class num(digits, 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(num, p) : mpq_class(num * p);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

std::string to_string(const Real& x, int significant_digits) {
  const mpfr_srcptr p = x.backend().data();
  if (mpfr_zero_p(p)) return "0";
  if (mpfr_nan_p(p)) return "nan";
  if (mpfr_inf_p(p)) return mpfr_sgn(p) < 0 ? "-inf" : "inf";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant_digits), p, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  if (e - 1 != 0) out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

std::string to_string(const Real& x) { return to_string(x, 0); }

Real parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_real(parse_rational(text));
  Real r;
  if (mpfr_set_str(r.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
    return to_real(parse_rational(text));
  return r;
}

}  // namespace schottky
