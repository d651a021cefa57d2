#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace schottky {

// Truncated power series in y_1..y_n (n <= 7) with exact rational
// coefficients, keeping monomials of total degree <= cap (cap <= 255).
// Monomials are packed: byte i holds the exponent of y_{i+1}, the top byte
// the total degree, so the packed order is graded and products add keys.
class MultiSeries {
 public:
  using Key = std::uint64_t;
  static constexpr int kMaxVars = 7;
  static constexpr int kMaxCap = 255;

  MultiSeries() = default;
  MultiSeries(int nvars, int cap);

  static MultiSeries constant(int nvars, int cap, const mpq_class& c);
  // y_{i+1}, i zero-based.
  static MultiSeries variable(int nvars, int cap, int i);
  static MultiSeries monomial(int nvars, int cap, const std::vector<int>& exps, const mpq_class& c);

  static Key key(const std::vector<int>& exps);
  static std::vector<int> exponents(Key k, int nvars);
  static int degree(Key k) { return static_cast<int>(k >> 56); }

  int nvars() const { return nvars_; }
  int cap() const { return cap_; }
  const std::map<Key, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpq_class coeff(const std::vector<int>& exps) const;
  mpq_class constant_term() const;
  // Lowest total degree present, -1 for the zero series.
  int min_degree() const;

  void add_term(Key k, const mpq_class& c);
  MultiSeries truncated(int cap) const;

  MultiSeries& operator+=(const MultiSeries& o);
  MultiSeries& operator-=(const MultiSeries& o);
  MultiSeries& operator*=(const mpq_class& c);
  MultiSeries operator-() const;

  // Throws NonInvertibleLeadingTerm when the constant term is zero.
  MultiSeries inverse() const;
  MultiSeries pow(int n) const;

  std::string to_string() const;

 private:
  int nvars_ = 0;
  int cap_ = 0;
  std::map<Key, mpq_class> terms_;
};

MultiSeries operator+(MultiSeries a, const MultiSeries& b);
MultiSeries operator-(MultiSeries a, const MultiSeries& b);
// Product truncated at the smaller cap.
MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
MultiSeries operator*(MultiSeries a, const mpq_class& c);
bool operator==(const MultiSeries& a, const MultiSeries& b);

// Substitute y_i -> value where given, keeping the variable slot (exponent 0).
MultiSeries specialize(const MultiSeries& s, const std::vector<std::optional<mpq_class>>& values);
// Exact value of the truncated polynomial at a rational point.
mpq_class evaluate(const MultiSeries& s, const std::vector<mpq_class>& point);

struct PrimeReport {
  unsigned long p = 0;
  bool p_integral = true;   // no denominator divisible by p
  bool primitive = false;   // p-integral and some coefficient is a p-unit
  std::vector<std::string> obstructions;  // monomials with p in the denominator
};

std::vector<PrimeReport> primitivity_check(const MultiSeries& s, const std::vector<unsigned long>& primes);

}  // namespace schottky
