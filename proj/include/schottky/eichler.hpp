#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schottky/periods.hpp"
#include "schottky/words.hpp"

namespace schottky {

// Coefficients c_0..c_n of c_0 + c_1 z + ... + c_n z^n.
using Polynomial = std::vector<cdouble>;

cdouble eval(const Polynomial& p, cdouble z);

// Letters of the group as unimodular double matrices, indexed by letter_code.
std::vector<MatD> unimodular_letters(const MarkedSchottkyGroup& g);

// (f·γ)(z) = f(γz) γ'(z)^{1-k} for unimodular γ; keeps degree <= 2k - 2.
Polynomial act(const Polynomial& f, const MatD& gamma, int k);

struct Cocycle {
  int k = 0;
  std::vector<Polynomial> values;  // ξ(γ_1), ..., ξ(γ_g)
  std::string label;
};

// Extension by ξ(γδ) = ξ(γ)·δ + ξ(δ), so ξ(γ^-1) = -ξ(γ)·γ^-1.
Polynomial cocycle_value(const Cocycle& xi, const Word& w, const std::vector<MatD>& letters);

// ξ_{1,k-1}; ξ_{2,1..2k-2}; ξ_{i,0..2k-2} for i >= 3, where ξ_{i,j}(γ_l) is
// δ_{il}(z - 1)^j for i = 2 and δ_{il} z^j otherwise. Needs a normalized marking.
std::vector<Cocycle> standard_cocycles(const MarkedSchottkyGroup& g, int k);
// (δv)(γ) = v·γ - v.
Cocycle coboundary(const Polynomial& v, const std::vector<MatD>& letters, int k);

// f(z) = scale / Π (z - p)^order.
struct Seed {
  struct Pole {
    cdouble p;
    int order = 1;
  };
  std::vector<Pole> poles;
  cdouble scale = 1;
  std::string label;
};

// Seeds with poles at fixed points of short words. Each pole has order
// max(1, k - 1) and the total order leaves at most a pole of order k - 1 at ∞
// when ∞ is a limit point (2k otherwise), so every Poincaré series is
// holomorphic on the domain of discontinuity.
std::vector<Seed> default_seeds(const MarkedSchottkyGroup& g, int k, int count);

struct EichlerGroup {
  int rank = 0;
  std::vector<MatD> letters;
  std::vector<DiskD> disks;
  bool infinity_is_limit_point = false;
};

// Throws CertificateRequired without a Schottky certificate.
std::shared_ptr<const EichlerGroup> make_eichler_group(const MarkedSchottkyGroup& g);

// values[s][n] = Σ_{reduced γ, |γ| <= max_len} f_s(γ z_n) γ'(z_n)^k.
std::vector<std::vector<cdouble>> poincare_values(const EichlerGroup& eg, int k, const std::vector<Seed>& seeds,
                                                  int max_len, const std::vector<cdouble>& zs);

// A finite combination Σ_s coeff_s P(f_s) of Poincaré series.
class KDifferential {
 public:
  KDifferential(std::shared_ptr<const EichlerGroup> eg, int k, std::vector<Seed> seeds, std::vector<cdouble> coeffs,
                int max_len);

  int k() const { return k_; }
  int max_len() const { return max_len_; }
  const EichlerGroup& group() const { return *eg_; }
  const std::vector<Seed>& seeds() const { return seeds_; }
  const std::vector<cdouble>& coefficients() const { return coeffs_; }

  std::vector<cdouble> values(const std::vector<cdouble>& zs) const;
  cdouble operator()(cdouble z) const { return values({z})[0]; }
  KDifferential with_max_len(int max_len) const;
  KDifferential scaled(cdouble a) const;

 private:
  std::shared_ptr<const EichlerGroup> eg_;
  int k_;
  std::vector<Seed> seeds_;
  std::vector<cdouble> coeffs_;
  int max_len_;
};

// Rejects g = 1, bad pole orders, and poles in the closure of the fundamental domain.
KDifferential poincare_kdiff(const MarkedSchottkyGroup& g, int k, const Seed& seed, int max_len);

// (1/2πi) Σ_i ∮_{C_i} ψ ξ(γ_i) dz with C_i oriented as in check_normalization.
cdouble pairing(const KDifferential& psi, const Cocycle& xi, int nodes);
// m[s][c] = pairing of seed s's series against cocycle c.
std::vector<std::vector<cdouble>> pairing_matrix(const EichlerGroup& eg, int k, const std::vector<Seed>& seeds,
                                                 int max_len, const std::vector<Cocycle>& cocycles, int nodes);

// max over samples and generators of |ψ(γ_i z) γ_i'(z)^k - ψ(z)|.
double automorphy_residual(const KDifferential& psi, const std::vector<cdouble>& samples);
// Points of the fundamental domain at a fixed distance outside each circle.
std::vector<cdouble> domain_samples(const EichlerGroup& eg, int per_circle);

struct NormalizedBasis {
  int dim = 0;
  std::vector<KDifferential> basis;
  std::vector<std::vector<cdouble>> coefficients;  // dim x seeds
  std::vector<std::vector<cdouble>> gram;          // re-paired at max_len + 1 and 2 * nodes
  double gram_residual = 0;                        // max |gram - I|
  double condition = 0;
  std::vector<double> singular_values;
};

// Solves C P = I for the seed pairing matrix P by the SVD pseudo-inverse.
// Throws RankDeficientSeeds when P has rank below (2k - 1)(g - 1).
NormalizedBasis normalized_basis(const MarkedSchottkyGroup& g, int k, const std::vector<Seed>& seeds, int max_len,
                                 int nodes);

}  // namespace schottky
