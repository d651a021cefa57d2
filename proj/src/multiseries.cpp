#include "schottky/multiseries.hpp"

#include <sstream>

#include "schottky/error.hpp"

namespace schottky {

MultiSeries::MultiSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {
  if (nvars < 1 || nvars > kMaxVars) fail(ErrorCode::InvalidParameter, "series support 1 to 7 variables");
  if (cap < 0 || cap > kMaxCap) fail(ErrorCode::InvalidParameter, "degree cap must lie in [0, 255]");
}

MultiSeries MultiSeries::constant(int nvars, int cap, const mpq_class& c) {
  MultiSeries s(nvars, cap);
  s.add_term(0, c);
  return s;
}

MultiSeries MultiSeries::variable(int nvars, int cap, int i) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return monomial(nvars, cap, e, 1);
}

MultiSeries MultiSeries::monomial(int nvars, int cap, const std::vector<int>& exps, const mpq_class& c) {
  MultiSeries s(nvars, cap);
  if (static_cast<int>(exps.size()) != nvars) fail(ErrorCode::InvalidParameter, "exponent vector length mismatch");
  Key k = key(exps);
  if (degree(k) <= cap) s.add_term(k, c);
  return s;
}

MultiSeries::Key MultiSeries::key(const std::vector<int>& exps) {
  Key k = 0;
  int deg = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > kMaxCap) fail(ErrorCode::InvalidParameter, "exponent out of range");
    k |= static_cast<Key>(exps[i]) << (8 * i);
    deg += exps[i];
  }
  if (deg > kMaxCap) fail(ErrorCode::InvalidParameter, "total degree out of range");
  return k | (static_cast<Key>(deg) << 56);
}

std::vector<int> MultiSeries::exponents(Key k, int nvars) {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>((k >> (8 * i)) & 0xff);
  return e;
}

mpq_class MultiSeries::coeff(const std::vector<int>& exps) const {
  auto it = terms_.find(key(exps));
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class MultiSeries::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int MultiSeries::min_degree() const { return terms_.empty() ? -1 : degree(terms_.begin()->first); }

void MultiSeries::add_term(Key k, const mpq_class& c) {
  if (degree(k) > cap_ || c == 0) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiSeries MultiSeries::truncated(int cap) const {
  MultiSeries s(nvars_, cap);
  for (const auto& [k, c] : terms_) {
    if (degree(k) > cap) break;
    s.terms_.emplace_hint(s.terms_.end(), k, c);
  }
  return s;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o) {
  if (o.nvars_ != nvars_) fail(ErrorCode::InvalidParameter, "variable count mismatch");
  if (o.cap_ < cap_) *this = truncated(o.cap_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& o) {
  if (o.nvars_ != nvars_) fail(ErrorCode::InvalidParameter, "variable count mismatch");
  if (o.cap_ < cap_) *this = truncated(o.cap_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

MultiSeries& MultiSeries::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

MultiSeries MultiSeries::operator-() const {
  MultiSeries s = *this;
  for (auto& kv : s.terms_) kv.second = -kv.second;
  return s;
}

MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
MultiSeries operator*(MultiSeries a, const mpq_class& c) { return a *= c; }

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  if (a.nvars() != b.nvars()) fail(ErrorCode::InvalidParameter, "variable count mismatch");
  const int cap = std::min(a.cap(), b.cap());
  MultiSeries out(a.nvars(), cap);
  std::map<MultiSeries::Key, mpq_class> acc;
  mpq_class t;
  for (const auto& [ka, ca] : a.terms()) {
    const int da = MultiSeries::degree(ka);
    if (da > cap) break;
    for (const auto& [kb, cb] : b.terms()) {
      if (da + MultiSeries::degree(kb) > cap) break;
      mpq_mul(t.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, fresh] = acc.try_emplace(ka + kb, t);
      if (!fresh) it->second += t;
    }
  }
  for (auto& [k, c] : acc)
    if (c != 0) out.add_term(k, c);
  return out;
}

bool operator==(const MultiSeries& a, const MultiSeries& b) {
  return a.nvars() == b.nvars() && a.terms() == b.terms();
}

MultiSeries MultiSeries::inverse() const {
  mpq_class c0 = constant_term();
  if (c0 == 0) fail(ErrorCode::NonInvertibleLeadingTerm, "series has zero constant term");
  // Newton: v <- v (2 - s v), doubling the correct degree each step.
  MultiSeries v = constant(nvars_, cap_, 1 / c0);
  MultiSeries two = constant(nvars_, cap_, 2);
  for (int good = 0; good < cap_; good = 2 * good + 1) v = v * (two - *this * v);
  return v;
}

MultiSeries MultiSeries::pow(int n) const {
  if (n < 0) fail(ErrorCode::InvalidParameter, "negative series power");
  MultiSeries r = constant(nvars_, cap_, 1), b = *this;
  for (; n > 0; n >>= 1) {
    if (n & 1) r = r * b;
    if (n > 1) b = b * b;
  }
  return r;
}

std::string MultiSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << '(' << c.get_str() << ')';
    auto e = exponents(k, nvars_);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) out << "*y" << i + 1 << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return out.str();
}

MultiSeries specialize(const MultiSeries& s, const std::vector<std::optional<mpq_class>>& values) {
  if (static_cast<int>(values.size()) != s.nvars()) fail(ErrorCode::InvalidParameter, "assignment length mismatch");
  MultiSeries out(s.nvars(), s.cap());
  for (const auto& [k, c] : s.terms()) {
    auto e = MultiSeries::exponents(k, s.nvars());
    mpq_class coef = c;
    for (int i = 0; i < s.nvars(); ++i) {
      if (!values[i] || e[i] == 0) continue;
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), values[i]->get_num_mpz_t(), e[i]);
      mpz_pow_ui(p.get_den_mpz_t(), values[i]->get_den_mpz_t(), e[i]);
      p.canonicalize();
      coef *= p;
      e[i] = 0;
    }
    out.add_term(MultiSeries::key(e), coef);
  }
  return out;
}

mpq_class evaluate(const MultiSeries& s, const std::vector<mpq_class>& point) {
  std::vector<std::optional<mpq_class>> v(point.begin(), point.end());
  return specialize(s, v).constant_term();
}

std::vector<PrimeReport> primitivity_check(const MultiSeries& s, const std::vector<unsigned long>& primes) {
  std::vector<PrimeReport> out;
  for (unsigned long p : primes) {
    if (p < 2) fail(ErrorCode::InvalidParameter, "primes must be at least 2");
    PrimeReport r;
    r.p = p;
    for (const auto& [k, c] : s.terms()) {
      if (mpz_divisible_ui_p(c.get_den_mpz_t(), p)) {
        r.p_integral = false;
        MultiSeries m = MultiSeries::monomial(s.nvars(), s.cap(), MultiSeries::exponents(k, s.nvars()), c);
        r.obstructions.push_back(m.to_string());
      } else if (!mpz_divisible_ui_p(c.get_num_mpz_t(), p)) {
        r.primitive = true;
      }
    }
    r.primitive = r.primitive && r.p_integral;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace schottky
