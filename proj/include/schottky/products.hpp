#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

// Multipliers of all primitive classes up to a length, in shell order. Built
// once per group and shared by every product evaluated on it.
struct MultiplierSpectrum {
  int rank = 0;
  int max_len = 0;
  std::vector<std::size_t> shell_begin;  // classes of length L: [shell_begin[L], shell_begin[L+1])
  std::vector<Complex> q;
  std::vector<Real> abs_q;
  std::vector<double> log2_abs_q;  // for cheap magnitude cut-offs
  bool real = false;               // all generator entries real
  Complex q1, q2;  // generator multipliers in marking order; q2 = 0 in rank one
  bool marking_ok = true;  // a(γ2) differs from both fixed points of γ1

  std::size_t count(int len) const { return shell_begin[len + 1] - shell_begin[len]; }
};

MultiplierSpectrum class_spectrum(const MarkedSchottkyGroup& g, int max_len, int workers = 1);

struct TruncatedValue {
  Complex value;
  Complex log_value;
  int max_len = 0;
  int m_max = 0;
  bool has_prefactor = false;
  Complex prefactor_log;
  std::vector<Complex> shells;  // shells[L], L = 1..max_len; shells[0] unused
  Real log_tail;                // estimate of |log(limit) - log_value|
  Real tail_estimate;           // estimate of |limit - value|
  std::vector<std::string> warnings;
};

// Smallest m with max|q|^m < 2^-P.
int default_m_max(const MultiplierSpectrum& s);

// Products over primitive classes (γ and γ^-1 counted separately).
TruncatedValue f1(const MultiplierSpectrum& s, int max_len, int m_max = -1);
TruncatedValue fk(const MultiplierSpectrum& s, int k, int max_len, int m_max = -1);
TruncatedValue ruelle_zeta(const MultiplierSpectrum& s, const Complex& sarg, int max_len);
TruncatedValue modified_ruelle(const MultiplierSpectrum& s, int k, int max_len);
// (1 - q1^k)^2 (1 - q2^k) / (1 - q2^(k-1)); the q2 part is absent in rank one.
Complex modified_ruelle_factor(const Complex& q1, const Complex& q2, int k, int rank = 2);

struct RatioCheck {
  int k = 0;
  int max_len = 0;
  Complex lhs;  // Z~(k) F_k
  Complex rhs;  // F_{k+1}
  Real residual;
  Real tail_bound;  // combined tail estimates of the three products
};

// Z~(k) F_k = F_{k+1} for groups with real multipliers in (0,1), with the
// exponent ranges of F_k and F_{k+1} matched.
RatioCheck check_ratio_identity(const MultiplierSpectrum& s, int k, int max_len, int m_max = -1);

// i = 0: replace γ_g by the map with its fixed points and multiplier t.
// 0 < i < g: conjugate γ_{i+1..g} by μ, where μ attracts to a, repels from a'
// and has multiplier t.
MarkedSchottkyGroup degenerate_family(const MarkedSchottkyGroup& g, int i, const Complex& t,
                                      const std::optional<ExtPoint>& a = std::nullopt,
                                      const std::optional<ExtPoint>& a_prime = std::nullopt);

// CSV with one row per shell: length, shell log contribution, running total.
std::string emit_shell_table(const TruncatedValue& v);

}  // namespace schottky
