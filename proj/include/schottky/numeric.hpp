#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace schottky {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using cdouble = std::complex<double>;

constexpr unsigned kDefaultPrecisionBits = 128;

// The mpfr backend in this boost version keeps one process-wide default,
// so the precision is set once per computation, before any worker starts.
unsigned working_precision_bits();
void set_working_precision_bits(unsigned bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
  unsigned saved_bits_;
};

// 2^e at the working precision.
Real pow2(int e);
// Copy of x rounded to the working precision.
Real round_to_working(const Real& x);

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int r) : re(r), im(0) {}
  Complex(double r, double i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return Complex(-re, -im); }

  bool is_zero() const { return re == 0 && im == 0; }
  cdouble to_cdouble() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
// log(1 - x), switching to the power series when |x| is small.
Complex log1m(const Complex& x);
Real log1m(const Real& x);
Complex pow(const Complex& z, long n);
Complex from_cdouble(cdouble z);

// out = x * y without temporaries beyond the caller's scratch.
void mul_into(Complex& out, const Complex& x, const Complex& y, Real& scratch);

// Neumaier-compensated sum, one instance per component.
class CompensatedSum {
 public:
  void add(const Real& x);
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0}, comp_{0}, t_{0};
};

class CompensatedComplexSum {
 public:
  void add(const Complex& z) { re_.add(z.re); im_.add(z.im); }
  Complex value() const { return Complex(re_.value(), im_.value()); }

 private:
  CompensatedSum re_, im_;
};

// Exact decimal parsing: "-1.25e-3", "7", "3/4".
mpq_class parse_rational(const std::string& text);
Real to_real(const mpq_class& q);
// Decimal string with enough digits to round-trip at the working precision.
std::string to_string(const Real& x);
std::string to_string(const Real& x, int significant_digits);
Real parse_real(const std::string& text);

}  // namespace schottky
