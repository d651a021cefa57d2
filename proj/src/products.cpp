#include "schottky/products.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include <mpfr.h>

#include "schottky/error.hpp"
#include "schottky/words.hpp"

namespace schottky {

namespace {

using boost::multiprecision::abs;

void mat_mul_into(MoebiusMap& out, const MoebiusMap& x, const MoebiusMap& y, Complex& t, Real& s) {
  mul_into(out.a, x.a, y.a, s);
  mul_into(t, x.b, y.c, s);
  out.a += t;
  mul_into(out.b, x.a, y.b, s);
  mul_into(t, x.b, y.d, s);
  out.b += t;
  mul_into(out.c, x.c, y.a, s);
  mul_into(t, x.d, y.c, s);
  out.c += t;
  mul_into(out.d, x.c, y.b, s);
  mul_into(t, x.d, y.d, s);
  out.d += t;
}

struct RealMat {
  Real a{1}, b{0}, c{0}, d{1};
};

void real_mul_into(RealMat& out, const RealMat& x, const RealMat& y, Real& s) {
  out.a = x.a; out.a *= y.a; s = x.b; s *= y.c; out.a += s;
  out.b = x.a; out.b *= y.b; s = x.b; s *= y.d; out.b += s;
  out.c = x.c; out.c *= y.a; s = x.d; s *= y.c; out.c += s;
  out.d = x.c; out.d *= y.b; s = x.d; s *= y.d; out.d += s;
}

// log2 of a positive value as a double, without an mpfr logarithm.
double log2_double(const Real& x) {
  if (x == 0) return -1e9;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.backend().data(), MPFR_RNDN);
  return static_cast<double>(e) + std::log2(std::fabs(m));
}

void check_len(const MultiplierSpectrum& s, int max_len) {
  if (max_len < 0) fail(ErrorCode::InvalidParameter, "max_len must be non-negative");
  if (max_len > s.max_len)
    fail(ErrorCode::InvalidParameter, "spectrum holds classes up to length " + std::to_string(s.max_len));
}

// Sum over classes of sum_{n=first}^{first+m_max} log(1 - q^n), per shell.
// Factors below 2^-(P+10) are skipped; their total stays below the precision.
void accumulate_shells(const MultiplierSpectrum& s, int max_len, int first, int m_max, TruncatedValue& v,
                       Real& exponent_tail) {
  v.shells.assign(max_len + 1, Complex());
  const double cut = -static_cast<double>(working_precision_bits()) - 10;
  Complex p, t;
  Real scratch;
  double rest_sum = 0;
  for (int len = 1; len <= max_len; ++len) {
    CompensatedComplexSum acc;
    for (std::size_t j = s.shell_begin[len]; j < s.shell_begin[len + 1]; ++j) {
      const double l2 = s.log2_abs_q[j];
      if (first * l2 < cut) continue;
      const Complex& q = s.q[j];
      if (s.real) {
        Real x = boost::multiprecision::pow(q.re, first);
        for (int m = 0; m <= m_max && (first + m) * l2 >= cut; ++m) {
          acc.add(Complex(log1m(x)));
          x *= q.re;
        }
      } else {
        p = pow(q, first);
        for (int m = 0; m <= m_max && (first + m) * l2 >= cut; ++m) {
          acc.add(log1m(p));
          mul_into(t, p, q, scratch);
          std::swap(p, t);
        }
      }
      // Exponents past m_max, geometric in |q|.
      double rest = (first + m_max + 1) * l2;
      if (rest >= cut) rest_sum += std::exp2(rest) / (1 - std::exp2(l2));
    }
    v.shells[len] = acc.value();
  }
  exponent_tail = Real(rest_sum);
}

void finalize(TruncatedValue& v, const Real& exponent_tail) {
  CompensatedComplexSum total;
  if (v.has_prefactor) total.add(v.prefactor_log);
  for (int len = 1; len <= v.max_len; ++len) total.add(v.shells[len]);
  v.log_value = total.value();
  v.value = exp(v.log_value);

  const int L = v.max_len;
  Real tail(0);
  if (L >= 1) {
    std::vector<Real> mag(L + 1);
    for (int len = 1; len <= L; ++len) mag[len] = abs(v.shells[len]);
    if (L >= 4 && mag[L] > 0 && mag[L] >= mag[L - 1] && mag[L - 1] >= mag[L - 2] && mag[L - 2] >= mag[L - 3])
      fail(ErrorCode::DivergenceSuspected, "shell contributions stopped decaying at length " + std::to_string(L - 3));
    if (mag[L] == 0) {
      tail = 0;
    } else if (L >= 2 && mag[L - 1] > 0) {
      Real r = mag[L] / mag[L - 1];
      if (r < 1) {
        tail = mag[L] * r / (1 - r);
      } else {
        tail = mag[L] * L;
        v.warnings.push_back("last shells do not decay; tail estimate is crude");
      }
    } else {
      tail = mag[L];
    }
  }
  v.log_tail = tail + exponent_tail;
  v.tail_estimate = abs(v.value) * (boost::multiprecision::expm1(v.log_tail));
}

TruncatedValue class_product(const MultiplierSpectrum& s, int first, int max_len, int m_max) {
  check_len(s, max_len);
  TruncatedValue v;
  v.max_len = max_len;
  v.m_max = m_max < 0 ? default_m_max(s) : m_max;
  Real exponent_tail;
  accumulate_shells(s, max_len, first, v.m_max, v, exponent_tail);
  finalize(v, exponent_tail);
  return v;
}

}  // namespace

MultiplierSpectrum class_spectrum(const MarkedSchottkyGroup& g, int max_len, int workers) {
  if (max_len < 0) fail(ErrorCode::InvalidParameter, "max_len must be non-negative");
  MultiplierSpectrum s;
  s.rank = g.rank;
  s.max_len = max_len;
  s.q1 = g.fixed[0].multiplier;
  s.q2 = g.rank >= 2 ? g.fixed[1].multiplier : Complex();
  if (g.rank >= 2) {
    Real tol = pow2(-static_cast<int>(working_precision_bits()) / 2);
    const ExtPoint& a2 = g.fixed[1].attractive;
    s.marking_ok = chordal_distance(a2, g.fixed[0].attractive) > tol && chordal_distance(a2, g.fixed[0].repulsive) > tol;
  }

  const int k = 2 * g.rank;
  std::vector<MoebiusMap> letters(k);
  for (int i = 0; i < g.rank; ++i) {
    letters[2 * i] = g.generators[i].unimodular();
    letters[2 * i + 1] = letters[2 * i].inverse();
  }

  bool real = true;
  for (const auto& m : letters)
    for (const Complex* e : {&m.a, &m.b, &m.c, &m.d}) real = real && e->im == 0;
  s.real = real;
  std::vector<RealMat> real_letters(k);
  for (int c = 0; c < k; ++c) real_letters[c] = RealMat{letters[c].a.re, letters[c].b.re, letters[c].c.re, letters[c].d.re};

  // buckets[code][len]: multipliers of classes starting with that letter.
  std::vector<std::vector<std::vector<Complex>>> buckets(k, std::vector<std::vector<Complex>>(max_len + 1));
  auto shard = [&](int code) {
    Complex t;
    Real scratch;
    if (real) {
      walk_classes(
          g.rank, max_len, RealMat{},
          [&](const RealMat& parent, int c, RealMat& child) { real_mul_into(child, parent, real_letters[c], scratch); },
          [&](const int*, int len, const RealMat& m) {
            Real tr = m.a + m.d;
            Complex q = multiplier_from_trace_ratio(Complex(tr * tr));
            q.im = 0;
            buckets[code][len].push_back(std::move(q));
          },
          code);
      return;
    }
    walk_classes(
        g.rank, max_len, MoebiusMap::identity(),
        [&](const MoebiusMap& parent, int c, MoebiusMap& child) { mat_mul_into(child, parent, letters[c], t, scratch); },
        [&](const int*, int len, const MoebiusMap& m) {
          Complex tr = m.a + m.d;
          buckets[code][len].push_back(multiplier_from_trace_ratio(tr * tr));
        },
        code);
  };
  if (workers <= 1) {
    for (int code = 0; code < k; ++code) shard(code);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, k); ++w)
      pool.emplace_back([&] {
        for (int code; (code = next.fetch_add(1)) < k;) shard(code);
      });
    for (auto& th : pool) th.join();
  }

  s.shell_begin.assign(max_len + 2, 0);
  for (int len = 1; len <= max_len; ++len) {
    s.shell_begin[len] = s.q.size();
    for (int code = 0; code < k; ++code)
      for (auto& q : buckets[code][len]) s.q.push_back(std::move(q));
    s.shell_begin[len + 1] = s.q.size();
  }
  s.abs_q.reserve(s.q.size());
  for (const auto& q : s.q) {
    Real a = q.im == 0 ? Real(abs(q.re)) : abs(q);
    if (a >= 1) fail(ErrorCode::MultiplierOnUnitCircle, "class multiplier has modulus >= 1");
    s.log2_abs_q.push_back(log2_double(a));
    s.abs_q.push_back(std::move(a));
  }
  return s;
}

int default_m_max(const MultiplierSpectrum& s) {
  Real qmax(0);
  for (const auto& a : s.abs_q)
    if (a > qmax) qmax = a;
  if (qmax == 0) qmax = abs(s.q1);
  if (qmax == 0) return 0;
  double lq = -boost::multiprecision::log(qmax).convert_to<double>();
  return static_cast<int>(std::ceil(working_precision_bits() * std::log(2.0) / lq)) + 1;
}

TruncatedValue f1(const MultiplierSpectrum& s, int max_len, int m_max) { return class_product(s, 1, max_len, m_max); }

TruncatedValue fk(const MultiplierSpectrum& s, int k, int max_len, int m_max) {
  if (k < 1) fail(ErrorCode::InvalidParameter, "k must be at least 1");
  if (k == 1) return f1(s, max_len, m_max);
  if (!s.marking_ok) fail(ErrorCode::NotNormalized, "marking cannot be normalized");
  check_len(s, max_len);
  TruncatedValue v;
  v.max_len = max_len;
  v.m_max = m_max < 0 ? default_m_max(s) : m_max;
  Real exponent_tail;
  accumulate_shells(s, max_len, k, v.m_max, v, exponent_tail);
  // (1 - q1)^2 ... (1 - q1^{k-1})^2 (1 - q2^{k-1})
  CompensatedComplexSum pre;
  for (int j = 1; j < k; ++j) {
    Complex l = log1m(pow(s.q1, j));
    pre.add(l);
    pre.add(l);
  }
  if (s.rank >= 2) pre.add(log1m(pow(s.q2, k - 1)));
  v.has_prefactor = true;
  v.prefactor_log = pre.value();
  finalize(v, exponent_tail);
  return v;
}

TruncatedValue ruelle_zeta(const MultiplierSpectrum& s, const Complex& sarg, int max_len) {
  check_len(s, max_len);
  if (sarg.re <= 1) fail(ErrorCode::InvalidParameter, "the product converges only for Re(s) > 1 here");
  TruncatedValue v;
  v.max_len = max_len;
  if (sarg.re < 2) v.warnings.push_back("1 < Re(s) < 2: convergence may be slow");
  v.shells.assign(max_len + 1, Complex());
  const double cut = -static_cast<double>(working_precision_bits()) - 10;
  const double sre = sarg.re.convert_to<double>();
  const bool integer_s = sarg.im == 0 && sarg.re == boost::multiprecision::round(sarg.re) && sarg.re <= 64;
  const int sint = integer_s ? sarg.re.convert_to<int>() : 0;
  Real exponent_tail(0);
  for (int len = 1; len <= max_len; ++len) {
    CompensatedComplexSum acc;
    for (std::size_t j = s.shell_begin[len]; j < s.shell_begin[len + 1]; ++j) {
      if (sre * s.log2_abs_q[j] < cut) continue;
      if (integer_s) {
        acc.add(Complex(-log1m(Real(boost::multiprecision::pow(s.abs_q[j], sint)))));
        continue;
      }
      Real lq = boost::multiprecision::log(s.abs_q[j]);
      Complex x = exp(Complex(sarg.re * lq, sarg.im * lq));  // |q|^s
      acc.add(-log1m(x));
    }
    v.shells[len] = acc.value();
  }
  finalize(v, exponent_tail);
  return v;
}

Complex modified_ruelle_factor(const Complex& q1, const Complex& q2, int k, int rank) {
  Complex one(1);
  Complex f = one - pow(q1, k);
  f *= f;
  if (rank >= 2) f = f * (one - pow(q2, k)) / (one - pow(q2, k - 1));
  return f;
}

TruncatedValue modified_ruelle(const MultiplierSpectrum& s, int k, int max_len) {
  if (k < 2) fail(ErrorCode::InvalidParameter, "k must be at least 2");
  if (!s.marking_ok) fail(ErrorCode::NotNormalized, "marking cannot be normalized");
  TruncatedValue v = ruelle_zeta(s, Complex(k), max_len);
  v.has_prefactor = true;
  Complex pre = log1m(pow(s.q1, k));
  pre += pre;
  if (s.rank >= 2) pre += log1m(pow(s.q2, k)) - log1m(pow(s.q2, k - 1));
  v.prefactor_log = pre;
  finalize(v, Real(0));
  return v;
}

RatioCheck check_ratio_identity(const MultiplierSpectrum& s, int k, int max_len, int m_max) {
  if (k < 2) fail(ErrorCode::InvalidParameter, "k must be at least 2");
  check_len(s, max_len);
  Real tol = pow2(-static_cast<int>(working_precision_bits()) / 2);
  for (std::size_t j = 0; j < s.q.size(); ++j) {
    if (abs(s.q[j].im) > tol * s.abs_q[j] || s.q[j].re <= 0)
      fail(ErrorCode::NotRealGroup, "class multiplier is not in (0,1)");
  }
  for (const Complex* q : {&s.q1, &s.q2})
    if (abs(q->im) > tol) fail(ErrorCode::NotRealGroup, "generator multiplier is not real");
  int mm = m_max < 0 ? default_m_max(s) : m_max;
  if (mm < 1) mm = 1;
  TruncatedValue z = modified_ruelle(s, k, max_len);
  TruncatedValue a = fk(s, k, max_len, mm);
  TruncatedValue b = fk(s, k + 1, max_len, mm - 1);
  RatioCheck rc;
  rc.k = k;
  rc.max_len = max_len;
  rc.lhs = z.value * a.value;
  rc.rhs = b.value;
  rc.residual = abs(rc.lhs - rc.rhs);
  rc.tail_bound = abs(rc.lhs) * boost::multiprecision::expm1(z.log_tail + a.log_tail) + b.tail_estimate;
  return rc;
}

MarkedSchottkyGroup degenerate_family(const MarkedSchottkyGroup& g, int i, const Complex& t,
                                      const std::optional<ExtPoint>& a, const std::optional<ExtPoint>& a_prime) {
  if (i < 0 || i >= g.rank) fail(ErrorCode::InvalidParameter, "degeneration index must satisfy 0 <= i < g");
  Real at = abs(t);
  if (at <= 0 || at >= 1) fail(ErrorCode::InvalidParameter, "degeneration parameter needs 0 < |t| < 1");
  std::vector<MoebiusMap> gens = g.generators;
  if (i == 0) {
    const FixedPointPair& fp = g.fixed[g.rank - 1];
    gens[g.rank - 1] = from_fixed_points(fp.attractive, fp.repulsive, t);
  } else {
    if (!a || !a_prime) fail(ErrorCode::InvalidParameter, "separating degeneration needs base points a and a'");
    MoebiusMap mu = from_fixed_points(*a, *a_prime, t);
    MoebiusMap mu_prime = from_fixed_points(*a_prime, *a, t);
    for (int j = i; j < g.rank; ++j) gens[j] = compose(compose(mu_prime, g.generators[j]), mu);
  }
  return make_group(std::move(gens), std::nullopt, g.precision_bits);
}

std::string emit_shell_table(const TruncatedValue& v) {
  std::ostringstream out;
  out << "length,log_re,log_im,cumulative_re,cumulative_im\n";
  CompensatedComplexSum total;
  auto row = [&](int len, const Complex& c) {
    total.add(c);
    Complex cum = total.value();
    out << len << ',' << to_string(c.re) << ',' << to_string(c.im) << ',' << to_string(cum.re) << ','
        << to_string(cum.im) << '\n';
  };
  if (v.has_prefactor) row(0, v.prefactor_log);
  for (int len = 1; len <= v.max_len; ++len) row(len, v.shells[len]);
  return out.str();
}

}  // namespace schottky
