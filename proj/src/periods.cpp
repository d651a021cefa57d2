#include "schottky/periods.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "schottky/error.hpp"

namespace schottky {

namespace {

constexpr int kMoments = 80;
constexpr double kAggregateRatio = 0.6;  // 0.6^80 ~ 2e-18
const cdouble kTwoPiI(0, 2 * std::numbers::pi);

struct Homog {
  cdouble x, y;  // the point x/y; y = 0 is ∞
};

Homog apply(const MatD& m, const Homog& p) {
  Homog r{m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y};
  double s = std::max(std::abs(r.x), std::abs(r.y));
  if (s > 0) {
    r.x /= s;
    r.y /= s;
  }
  return r;
}

Homog homog(const ExtPoint& p) {
  if (p.infinite) return {1, 0};
  return {p.z.to_cdouble(), 1};
}

bool finite_point(const Homog& h, cdouble& z) {
  if (std::abs(h.y) <= 1e-300 * std::abs(h.x)) return false;
  z = h.x / h.y;
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double segment_clearance(const std::vector<DiskD>& disks, cdouble u, cdouble v, int own_start, int own_end,
                         bool& ok) {
  constexpr int kSamples = 64;
  double best = INFINITY;
  for (int s = 0; s <= kSamples; ++s) {
    cdouble z = u + (v - u) * (static_cast<double>(s) / kSamples);
    for (int k = 0; k < static_cast<int>(disks.size()); ++k) {
      double gap = disks[k].gap(z);
      bool own = (s == 0 && k == own_start) || (s == kSamples && k == own_end);
      if (own) continue;
      if (k == own_start || k == own_end) {
        if (gap <= 0) ok = false;
        continue;
      }
      best = std::min(best, gap);
      if (gap <= 0) ok = false;
    }
  }
  return best;
}

std::vector<std::vector<cdouble>> square(int g) { return std::vector<std::vector<cdouble>>(g, std::vector<cdouble>(g)); }

NormalizationCheck normalization_from(const std::vector<DifferentialEvaluator>& evals, int nodes) {
  const int g = static_cast<int>(evals.size());
  NormalizationCheck nc;
  nc.m = square(g);
  for (int i = 0; i < g; ++i) {
    const auto& disks = evals[i].disks();
    for (int j = 0; j < g; ++j) {
      const DiskD& c = disks[disk_index(j + 1)];
      cdouble v = contour_integral([&](cdouble z) { return evals[i](z); }, c, nodes, boundary_ccw(c)) / kTwoPiI;
      nc.m[i][j] = v;
      nc.max_error = std::max(nc.max_error, std::abs(v - cdouble(i == j ? 1 : 0)));
    }
  }
  return nc;
}

std::vector<DifferentialEvaluator> build_evaluators(const MarkedSchottkyGroup& g, int max_len) {
  std::vector<DifferentialEvaluator> evals;
  for (int i = 1; i <= g.rank; ++i) evals.emplace_back(g, i, max_len);
  return evals;
}

}  // namespace

double DiskD::gap(cdouble z) const {
  double d = std::abs(z - center);
  return exterior ? radius - d : d - radius;
}

cdouble MatD::derivative(cdouble z) const {
  cdouble den = c * z + d;
  return (a * d - b * c) / (den * den);
}

MatD to_matd(const MoebiusMap& m) {
  MoebiusMap n = m;
  n.normalize();
  auto e = n.to_cdouble();
  return {e[0], e[1], e[2], e[3]};
}

MatD mul(const MatD& x, const MatD& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::vector<DiskD> certificate_disks(const MarkedSchottkyGroup& g) {
  SchottkyCertificate cert;
  try {
    cert = validate_schottky(g);
  } catch (const Error& e) {
    fail(ErrorCode::CertificateRequired, std::string("no Schottky certificate: ") + e.what());
  }
  std::vector<DiskD> out;
  for (const Disk& d : cert.disks) out.push_back({d.center.to_cdouble(), d.radius.convert_to<double>(), d.exterior});
  return out;
}

cdouble contour_integral(const std::function<cdouble(cdouble)>& f, const DiskD& circle, int nodes, bool ccw) {
  if (nodes < 1) fail(ErrorCode::InvalidParameter, "nodes must be positive");
  cdouble sum = 0;
  const double h = 2 * std::numbers::pi / nodes;
  for (int k = 0; k < nodes; ++k) {
    cdouble e = std::polar(circle.radius, h * k);
    sum += f(circle.center + e) * e;
  }
  sum *= cdouble(0, h);
  return ccw ? sum : -sum;
}

DifferentialEvaluator::DifferentialEvaluator(const MarkedSchottkyGroup& g, int i, int max_len)
    : index_(i), max_len_(max_len) {
  if (i < 1 || i > g.rank) fail(ErrorCode::InvalidParameter, "differential index out of range");
  if (max_len < 0) fail(ErrorCode::InvalidParameter, "max_len must be non-negative");
  disks_ = certificate_disks(g);
  const int k = 2 * g.rank;
  std::vector<MatD> letters(k);
  for (int c = 0; c < k; ++c) {
    int l = (c & 1) ? -(c / 2 + 1) : (c / 2 + 1);
    MatD m = to_matd(g.generators[c / 2]);
    letters[c] = l > 0 ? m : m.inverse();
  }
  const Homog a = homog(g.fixed[i - 1].attractive);
  const Homog b = homog(g.fixed[i - 1].repulsive);
  const int skip = 2 * (i - 1);

  auto emit = [&](const Homog& pa, const Homog& pb) {
    ++cosets_;
    cdouble z;
    if (finite_point(pa, z)) poles_.push_back({z, 1});
    if (finite_point(pb, z)) poles_.push_back({z, -1});
  };
  // Words are grown by prepending letters; `first` is the current first letter code.
  std::function<void(const Homog&, const Homog&, int, int)> grow = [&](const Homog& pa, const Homog& pb, int first,
                                                                       int depth) {
    emit(pa, pb);
    if (depth == max_len) return;
    for (int c = 0; c < k; ++c) {
      if (c == (first ^ 1)) continue;
      grow(apply(letters[c], pa), apply(letters[c], pb), c, depth + 1);
    }
  };
  emit(a, b);
  if (max_len >= 1)
    for (int c = 0; c < k; ++c)
      if (c != skip && c != skip + 1) grow(apply(letters[c], a), apply(letters[c], b), c, 1);

  clusters_.resize(disks_.size());
  for (std::size_t d = 0; d < disks_.size(); ++d) clusters_[d].disk = disks_[d];
  for (const PoleTerm& t : poles_) {
    int best = -1;
    double best_gap = 0;
    for (std::size_t d = 0; d < disks_.size(); ++d) {
      double gap = disks_[d].gap(t.p);
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<int>(d);
      }
    }
    if (best < 0) {
      loose_.push_back(t);
      continue;
    }
    Cluster& cl = clusters_[best];
    double dist = std::abs(t.p - cl.disk.center);
    double ratio = cl.disk.exterior ? cl.disk.radius / dist : dist / cl.disk.radius;
    (ratio <= kAggregateRatio ? cl.aggregated : cl.near).push_back(t);
  }
  for (Cluster& cl : clusters_) {
    cl.moments.assign(kMoments, 0);
    const double R = cl.disk.radius;
    for (const PoleTerm& t : cl.aggregated) {
      if (cl.disk.exterior) {
        // Σ w/(z-p) = -(1/R) Σ_n w (R/(p-c))^{n+1} ((z-c)/R)^n
        cdouble r = R / (t.p - cl.disk.center), pw = r;
        for (int n = 0; n < kMoments; ++n, pw *= r) cl.moments[n] -= t.w * pw / R;
      } else {
        // Σ w/(z-p) = (1/(z-c)) Σ_n w ((p-c)/R)^n (R/(z-c))^n
        cdouble r = (t.p - cl.disk.center) / R, pw = 1;
        for (int n = 0; n < kMoments; ++n, pw *= r) cl.moments[n] += t.w * pw;
      }
    }
  }
}

cdouble DifferentialEvaluator::direct(cdouble z) const {
  cdouble s = 0;
  for (const PoleTerm& t : poles_) s += t.w / (z - t.p);
  return s;
}

cdouble DifferentialEvaluator::operator()(cdouble z) const {
  cdouble s = 0;
  for (const PoleTerm& t : loose_) s += t.w / (z - t.p);
  for (const Cluster& cl : clusters_) {
    for (const PoleTerm& t : cl.near) s += t.w / (z - t.p);
    if (cl.aggregated.empty()) continue;
    const double R = cl.disk.radius;
    cdouble x = cl.disk.exterior ? (z - cl.disk.center) / R : R / (z - cl.disk.center);
    if (std::abs(x) > 1 + 1e-9) {
      for (const PoleTerm& t : cl.aggregated) s += t.w / (z - t.p);
      continue;
    }
    cdouble h = 0;
    for (int n = kMoments - 1; n >= 0; --n) h = h * x + cl.moments[n];
    s += cl.disk.exterior ? h : h / (z - cl.disk.center);
  }
  return s;
}

NormalizationCheck check_normalization(const MarkedSchottkyGroup& g, int max_len, int nodes) {
  return normalization_from(build_evaluators(g, max_len), nodes);
}

BetaPath find_beta_path(const std::vector<DiskD>& disks, const MatD& gamma, int j) {
  const int ds = disk_index(j), de = disk_index(-j);
  const DiskD& start = disks.at(ds);
  BetaPath best;
  best.clearance = -INFINITY;
  constexpr int kAngles = 36;
  auto consider = [&](const std::vector<cdouble>& v) {
    bool ok = true;
    double score = INFINITY;
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      int own_start = s == 0 ? ds : -1;
      int own_end = s + 2 == v.size() ? de : -1;
      score = std::min(score, segment_clearance(disks, v[s], v[s + 1], own_start, own_end, ok));
    }
    if (ok && score > best.clearance) {
      best.vertices = v;
      best.clearance = score;
    }
  };
  std::vector<std::pair<cdouble, cdouble>> ends;
  for (int a = 0; a < kAngles; ++a) {
    cdouble z0 = start.center + std::polar(start.radius, 2 * std::numbers::pi * (a + 0.5) / kAngles);
    ends.emplace_back(z0, gamma.apply(z0));
    consider({ends.back().first, ends.back().second});
  }
  if (best.vertices.empty()) {
    // One waypoint from a grid over the bounding box of the finite disks.
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (const DiskD& d : disks) {
      double r = d.exterior ? d.radius : 2 * d.radius;
      lo_x = std::min(lo_x, d.center.real() - r);
      hi_x = std::max(hi_x, d.center.real() + r);
      lo_y = std::min(lo_y, d.center.imag() - r);
      hi_y = std::max(hi_y, d.center.imag() + r);
    }
    constexpr int kGrid = 24;
    for (const auto& [z0, z1] : ends)
      for (int u = 0; u <= kGrid; ++u)
        for (int v = 0; v <= kGrid; ++v) {
          cdouble w(lo_x + (hi_x - lo_x) * u / kGrid, lo_y + (hi_y - lo_y) * v / kGrid);
          consider({z0, w, z1});
        }
  }
  if (best.vertices.empty())
    fail(ErrorCode::PathCrossesCircle, "no beta path for generator " + std::to_string(j) + " avoids the circles");
  return best;
}

cdouble path_integral(const std::function<cdouble(cdouble)>& f, const std::vector<cdouble>& vertices) {
  cdouble total = 0;
  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    const cdouble u = vertices[s], dv = vertices[s + 1] - vertices[s];
    auto g = [&](double t) { return f(u + dv * t) * dv; };
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14);
  }
  return total;
}

PeriodMatrix period_matrix(const MarkedSchottkyGroup& g, int max_len, int nodes) {
  std::vector<DifferentialEvaluator> evals = build_evaluators(g, max_len);
  PeriodMatrix pm;
  pm.g = g.rank;
  pm.max_len = max_len;
  pm.normalization = normalization_from(evals, nodes);
  pm.tau = square(g.rank);
  const auto& disks = evals.front().disks();
  for (int j = 0; j < g.rank; ++j) {
    BetaPath path = find_beta_path(disks, to_matd(g.generators[j]), j + 1);
    for (int i = 0; i < g.rank; ++i)
      pm.tau[i][j] = path_integral([&](cdouble z) { return evals[i](z); }, path.vertices) / kTwoPiI;
    pm.paths.push_back(std::move(path));
  }
  pm.tau_sym = pm.tau;
  for (int i = 0; i < g.rank; ++i)
    for (int j = i + 1; j < g.rank; ++j) {
      cdouble d = pm.tau[i][j] - pm.tau[j][i];
      double n = std::round(d.real());
      pm.asymmetry = std::max(pm.asymmetry, std::abs(d - n));
      cdouble avg = 0.5 * (pm.tau[i][j] + pm.tau[j][i] + n);
      pm.tau_sym[i][j] = avg;
      pm.tau_sym[j][i] = avg;
    }
  Eigen::MatrixXd im(g.rank, g.rank);
  for (int i = 0; i < g.rank; ++i)
    for (int j = 0; j < g.rank; ++j) im(i, j) = pm.tau_sym[i][j].imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im, Eigen::EigenvaluesOnly);
  pm.im_positive_definite = true;
  for (int i = 0; i < g.rank; ++i) {
    pm.im_eigenvalues.push_back(es.eigenvalues()(i));
    pm.im_positive_definite = pm.im_positive_definite && es.eigenvalues()(i) > 0;
  }
  return pm;
}

}  // namespace schottky
