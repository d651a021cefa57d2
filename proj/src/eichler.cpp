#include "schottky/eichler.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "schottky/error.hpp"

namespace schottky {

namespace {

Polynomial poly_mul(const Polynomial& x, const Polynomial& y) {
  Polynomial r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

Polynomial poly_pow(const Polynomial& x, int n) {
  Polynomial r{1};
  for (int i = 0; i < n; ++i) r = poly_mul(r, x);
  return r;
}

void poly_add(Polynomial& acc, const Polynomial& x, cdouble s = 1) {
  if (acc.size() < x.size()) acc.resize(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += s * x[i];
}

cdouble seed_value(const Seed& s, cdouble w) {
  cdouble den = 1;
  for (const auto& p : s.poles) {
    cdouble d = w - p.p;
    for (int j = 0; j < p.order; ++j) den *= d;
  }
  return s.scale / den;
}

cdouble ipow(cdouble x, int n) {
  cdouble r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void check_k(int k) {
  if (k < 2) fail(ErrorCode::InvalidParameter, "k must be at least 2");
}

struct CirclePoints {
  std::vector<cdouble> zs;
  std::vector<int> generator;  // zero-based generator whose circle holds the point
  std::vector<double> weight;  // ±(z - c)/nodes including orientation
  std::vector<cdouble> offset;
};

CirclePoints circle_points(const EichlerGroup& eg, int nodes) {
  if (nodes < 1) fail(ErrorCode::InvalidParameter, "nodes must be positive");
  CirclePoints cp;
  for (int i = 0; i < eg.rank; ++i) {
    const DiskD& c = eg.disks[disk_index(i + 1)];
    const double sign = boundary_ccw(c) ? 1.0 : -1.0;
    for (int n = 0; n < nodes; ++n) {
      cdouble e = std::polar(c.radius, 2 * std::numbers::pi * n / nodes);
      cp.zs.push_back(c.center + e);
      cp.generator.push_back(i);
      cp.weight.push_back(sign / nodes);
      cp.offset.push_back(e);
    }
  }
  return cp;
}

std::vector<std::vector<cdouble>> pair_values(const CirclePoints& cp, const std::vector<std::vector<cdouble>>& psi,
                                              const std::vector<Cocycle>& cocycles) {
  std::vector<std::vector<cdouble>> m(psi.size(), std::vector<cdouble>(cocycles.size(), 0));
  for (std::size_t c = 0; c < cocycles.size(); ++c) {
    std::vector<cdouble> xi(cp.zs.size());
    for (std::size_t n = 0; n < cp.zs.size(); ++n)
      xi[n] = eval(cocycles[c].values[cp.generator[n]], cp.zs[n]) * cp.offset[n] * cp.weight[n];
    for (std::size_t s = 0; s < psi.size(); ++s) {
      cdouble acc = 0;
      for (std::size_t n = 0; n < cp.zs.size(); ++n) acc += psi[s][n] * xi[n];
      m[s][c] = acc;
    }
  }
  return m;
}

}  // namespace

cdouble eval(const Polynomial& p, cdouble z) {
  cdouble r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * z + p[i];
  return r;
}

std::vector<MatD> unimodular_letters(const MarkedSchottkyGroup& g) {
  std::vector<MatD> letters(2 * g.rank);
  for (int i = 0; i < g.rank; ++i) {
    MatD m = to_matd(g.generators[i]);
    cdouble s = std::sqrt(m.a * m.d - m.b * m.c);
    m = {m.a / s, m.b / s, m.c / s, m.d / s};
    letters[2 * i] = m;
    letters[2 * i + 1] = m.inverse();
  }
  return letters;
}

Polynomial act(const Polynomial& f, const MatD& gamma, int k) {
  check_k(k);
  const int n = 2 * k - 2;
  if (static_cast<int>(f.size()) > n + 1) fail(ErrorCode::InvalidParameter, "polynomial degree exceeds 2k - 2");
  Polynomial num{gamma.b, gamma.a}, den{gamma.d, gamma.c};
  Polynomial r(n + 1, 0);
  for (int m = 0; m < static_cast<int>(f.size()); ++m) {
    if (f[m] == cdouble(0)) continue;
    poly_add(r, poly_mul(poly_pow(num, m), poly_pow(den, n - m)), f[m]);
  }
  r.resize(n + 1);
  return r;
}

Polynomial cocycle_value(const Cocycle& xi, const Word& w, const std::vector<MatD>& letters) {
  check_letters(w);
  // ξ(s_1 ... s_n) = Σ_j ξ(s_j)·(s_{j+1} ... s_n), built from the right.
  Polynomial acc(2 * xi.k - 1, 0);
  MatD suffix;
  for (std::size_t j = w.size(); j-- > 0;) {
    Letter l = w.letters[j];
    int i = (l < 0 ? -l : l) - 1;
    Polynomial v = xi.values.at(i);
    if (l < 0) {
      v = act(v, letters[letter_code(l)], xi.k);
      for (auto& c : v) c = -c;
    }
    poly_add(acc, act(v, suffix, xi.k));
    suffix = mul(letters[letter_code(l)], suffix);
  }
  return acc;
}

std::vector<Cocycle> standard_cocycles(const MarkedSchottkyGroup& g, int k) {
  check_k(k);
  if (g.rank < 2) fail(ErrorCode::InvalidParameter, "cocycles need g >= 2");
  if (!is_normalized(g, pow2(-static_cast<int>(working_precision_bits()) / 2)))
    fail(ErrorCode::NotNormalized, "standard cocycles need a normalized marking");
  const int n = 2 * k - 2;
  std::vector<Cocycle> out;
  auto make = [&](int i, int j) {
    Cocycle c;
    c.k = k;
    c.values.assign(g.rank, Polynomial(n + 1, 0));
    // (z - 1)^j for i = 2, z^j otherwise
    Polynomial p = i == 2 ? poly_pow(Polynomial{-1, 1}, j) : poly_pow(Polynomial{0, 1}, j);
    p.resize(n + 1, 0);
    c.values[i - 1] = p;
    c.label = "xi_" + std::to_string(i) + "," + std::to_string(j);
    out.push_back(std::move(c));
  };
  make(1, k - 1);
  for (int j = 1; j <= n; ++j) make(2, j);
  for (int i = 3; i <= g.rank; ++i)
    for (int j = 0; j <= n; ++j) make(i, j);
  return out;
}

Cocycle coboundary(const Polynomial& v, const std::vector<MatD>& letters, int k) {
  Cocycle c;
  c.k = k;
  c.label = "coboundary";
  for (std::size_t i = 0; 2 * i < letters.size(); ++i) {
    Polynomial p = act(v, letters[2 * i], k);
    poly_add(p, v, -1);
    c.values.push_back(std::move(p));
  }
  return c;
}

std::shared_ptr<const EichlerGroup> make_eichler_group(const MarkedSchottkyGroup& g) {
  auto eg = std::make_shared<EichlerGroup>();
  eg->rank = g.rank;
  eg->letters = unimodular_letters(g);
  eg->disks = certificate_disks(g);
  for (const auto& f : g.fixed) eg->infinity_is_limit_point |= f.attractive.infinite || f.repulsive.infinite;
  return eg;
}

std::vector<Seed> default_seeds(const MarkedSchottkyGroup& g, int k, int count) {
  check_k(k);
  std::vector<cdouble> pool;
  auto add = [&](const ExtPoint& p) {
    if (p.infinite) return;
    cdouble z = p.z.to_cdouble();
    for (cdouble q : pool)
      if (std::abs(q - z) < 1e-8) return;
    pool.push_back(z);
  };
  for (const Word& w : enumerate_classes(g.rank, 3)) {
    FixedPointPair fp = fixed_points(evaluate(w, g));
    add(fp.attractive);
    add(fp.repulsive);
  }
  bool inf_limit = false;
  for (const auto& f : g.fixed) inf_limit |= f.attractive.infinite || f.repulsive.infinite;
  const int order = std::max(1, k - 1);
  const int need = inf_limit ? k + 1 : 2 * k;
  const int per_seed = (need + order - 1) / order;
  if (static_cast<int>(pool.size()) < per_seed + count - 1)
    fail(ErrorCode::RankDeficientSeeds, "not enough limit points for the requested seeds");
  std::vector<Seed> seeds;
  for (int s = 0; s < count; ++s) {
    Seed seed;
    for (int t = 0; t < per_seed; ++t) seed.poles.push_back({pool[s + t], order});
    seed.label = "seed" + std::to_string(s);
    seeds.push_back(std::move(seed));
  }
  return seeds;
}

std::vector<std::vector<cdouble>> poincare_values(const EichlerGroup& eg, int k, const std::vector<Seed>& seeds,
                                                  int max_len, const std::vector<cdouble>& zs) {
  check_k(k);
  if (max_len < 0) fail(ErrorCode::InvalidParameter, "max_len must be non-negative");
  const std::size_t npts = zs.size();
  const int nl = static_cast<int>(eg.letters.size());
  std::vector<std::vector<cdouble>> vals(seeds.size(), std::vector<cdouble>(npts, 0));
  // Per-depth buffers: w = γz and d = γ'(z) for the current word γ.
  std::vector<std::vector<cdouble>> w(max_len + 1, std::vector<cdouble>(npts));
  std::vector<std::vector<cdouble>> d(max_len + 1, std::vector<cdouble>(npts));
  auto accumulate = [&](int depth) {
    for (std::size_t s = 0; s < seeds.size(); ++s)
      for (std::size_t n = 0; n < npts; ++n) vals[s][n] += seed_value(seeds[s], w[depth][n]) * ipow(d[depth][n], k);
  };
  // Words grow by prepending a letter: (t∘γ)'(z) = t'(γz) γ'(z).
  std::function<void(int, int)> grow = [&](int depth, int first) {
    accumulate(depth);
    if (depth == max_len) return;
    for (int c = 0; c < nl; ++c) {
      if (depth > 0 && c == (first ^ 1)) continue;
      const MatD& t = eg.letters[c];
      for (std::size_t n = 0; n < npts; ++n) {
        cdouble den = t.c * w[depth][n] + t.d;
        w[depth + 1][n] = (t.a * w[depth][n] + t.b) / den;
        d[depth + 1][n] = d[depth][n] / (den * den);
      }
      grow(depth + 1, c);
    }
  };
  w[0] = zs;
  std::fill(d[0].begin(), d[0].end(), cdouble(1));
  grow(0, -1);
  return vals;
}

KDifferential::KDifferential(std::shared_ptr<const EichlerGroup> eg, int k, std::vector<Seed> seeds,
                             std::vector<cdouble> coeffs, int max_len)
    : eg_(std::move(eg)), k_(k), seeds_(std::move(seeds)), coeffs_(std::move(coeffs)), max_len_(max_len) {
  if (seeds_.size() != coeffs_.size()) fail(ErrorCode::InvalidParameter, "one coefficient per seed");
}

std::vector<cdouble> KDifferential::values(const std::vector<cdouble>& zs) const {
  auto per_seed = poincare_values(*eg_, k_, seeds_, max_len_, zs);
  std::vector<cdouble> out(zs.size(), 0);
  for (std::size_t s = 0; s < seeds_.size(); ++s)
    for (std::size_t n = 0; n < zs.size(); ++n) out[n] += coeffs_[s] * per_seed[s][n];
  return out;
}

KDifferential KDifferential::with_max_len(int max_len) const { return KDifferential(eg_, k_, seeds_, coeffs_, max_len); }

KDifferential KDifferential::scaled(cdouble a) const {
  std::vector<cdouble> c = coeffs_;
  for (auto& x : c) x *= a;
  return KDifferential(eg_, k_, seeds_, std::move(c), max_len_);
}

KDifferential poincare_kdiff(const MarkedSchottkyGroup& g, int k, const Seed& seed, int max_len) {
  check_k(k);
  if (g.rank < 2) fail(ErrorCode::InvalidParameter, "k-differentials are spanned this way only for g >= 2");
  auto eg = make_eichler_group(g);
  int total = 0;
  for (const auto& p : seed.poles) {
    if (p.order < 1 || p.order > std::max(1, k - 1))
      fail(ErrorCode::InvalidParameter, "pole orders must lie in [1, max(1, k - 1)]");
    total += p.order;
    bool in_domain = true;
    for (const DiskD& d : eg->disks) in_domain = in_domain && d.gap(p.p) >= 0;
    if (in_domain) fail(ErrorCode::PoleInDomain, "seed pole lies in the closure of the fundamental domain");
  }
  const int need = eg->infinity_is_limit_point ? k + 1 : 2 * k;
  if (total < need) fail(ErrorCode::InvalidParameter, "total pole order too small; the series would have a pole at infinity");
  return KDifferential(eg, k, {seed}, {1}, max_len);
}

std::vector<std::vector<cdouble>> pairing_matrix(const EichlerGroup& eg, int k, const std::vector<Seed>& seeds,
                                                 int max_len, const std::vector<Cocycle>& cocycles, int nodes) {
  CirclePoints cp = circle_points(eg, nodes);
  return pair_values(cp, poincare_values(eg, k, seeds, max_len, cp.zs), cocycles);
}

cdouble pairing(const KDifferential& psi, const Cocycle& xi, int nodes) {
  if (xi.k != psi.k()) fail(ErrorCode::InvalidParameter, "weight mismatch between differential and cocycle");
  if (static_cast<int>(xi.values.size()) != psi.group().rank) fail(ErrorCode::RankMismatch, "cocycle rank mismatch");
  CirclePoints cp = circle_points(psi.group(), nodes);
  return pair_values(cp, {psi.values(cp.zs)}, {xi})[0][0];
}

std::vector<cdouble> domain_samples(const EichlerGroup& eg, int per_circle) {
  std::vector<cdouble> out;
  for (const DiskD& c : eg.disks) {
    double r = c.exterior ? 0.87 * c.radius : 1.15 * c.radius;
    for (int n = 0; n < per_circle; ++n) {
      cdouble z = c.center + std::polar(r, 2 * std::numbers::pi * (n + 0.25) / per_circle);
      bool ok = true;
      for (const DiskD& d : eg.disks) ok = ok && d.gap(z) > 0;
      if (ok) out.push_back(z);
    }
  }
  return out;
}

double automorphy_residual(const KDifferential& psi, const std::vector<cdouble>& samples) {
  const EichlerGroup& eg = psi.group();
  std::vector<cdouble> pts = samples;
  for (int i = 0; i < eg.rank; ++i)
    for (cdouble z : samples) pts.push_back(eg.letters[2 * i].apply(z));
  std::vector<cdouble> v = psi.values(pts);
  const std::size_t ns = samples.size();
  double worst = 0;
  for (int i = 0; i < eg.rank; ++i)
    for (std::size_t n = 0; n < ns; ++n) {
      cdouble lhs = v[ns * (i + 1) + n] * ipow(eg.letters[2 * i].derivative(samples[n]), psi.k());
      worst = std::max(worst, std::abs(lhs - v[n]));
    }
  return worst;
}

NormalizedBasis normalized_basis(const MarkedSchottkyGroup& g, int k, const std::vector<Seed>& seeds, int max_len,
                                 int nodes) {
  std::vector<Cocycle> cocycles = standard_cocycles(g, k);
  const int dim = static_cast<int>(cocycles.size());
  if (static_cast<int>(seeds.size()) < dim)
    fail(ErrorCode::RankDeficientSeeds, "need at least " + std::to_string(dim) + " seeds; add more poles");
  for (const Seed& s : seeds) poincare_kdiff(g, k, s, max_len);  // validates each seed
  auto eg = make_eichler_group(g);
  auto p = pairing_matrix(*eg, k, seeds, max_len, cocycles, nodes);
  const int ns = static_cast<int>(seeds.size());
  Eigen::MatrixXcd P(ns, dim);
  for (int s = 0; s < ns; ++s)
    for (int c = 0; c < dim; ++c) P(s, c) = p[s][c];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  NormalizedBasis nb;
  nb.dim = dim;
  for (int i = 0; i < sv.size(); ++i) nb.singular_values.push_back(sv(i));
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > 1e-10 * smax))
    fail(ErrorCode::RankDeficientSeeds, "seed pairing matrix is rank deficient; add more poles");
  nb.condition = smax / smin;
  Eigen::MatrixXcd C = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();  // dim x ns

  // Validate against an independent evaluation: one more shell, twice the nodes.
  auto refined = pairing_matrix(*eg, k, seeds, max_len + 1, cocycles, 2 * nodes);
  Eigen::MatrixXcd R(ns, dim);
  for (int s = 0; s < ns; ++s)
    for (int c = 0; c < dim; ++c) R(s, c) = refined[s][c];
  Eigen::MatrixXcd G = C * R;
  nb.coefficients.assign(dim, std::vector<cdouble>(ns));
  nb.gram.assign(dim, std::vector<cdouble>(dim));
  for (int r = 0; r < dim; ++r) {
    for (int s = 0; s < ns; ++s) nb.coefficients[r][s] = C(r, s);
    for (int c = 0; c < dim; ++c) {
      nb.gram[r][c] = G(r, c);
      nb.gram_residual = std::max(nb.gram_residual, std::abs(G(r, c) - cdouble(r == c ? 1 : 0)));
    }
    nb.basis.emplace_back(eg, k, seeds, nb.coefficients[r], max_len);
  }
  return nb;
}

}  // namespace schottky
