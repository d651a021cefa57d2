#pragma once

#include <functional>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

// Double-precision geometry for the quadrature code.
struct DiskD {
  cdouble center;
  double radius = 0;
  bool exterior = false;

  // Positive outside the disk set.
  double gap(cdouble z) const;
};

struct MatD {
  cdouble a{1}, b{0}, c{0}, d{1};
  cdouble apply(cdouble z) const { return (a * z + b) / (c * z + d); }
  cdouble derivative(cdouble z) const;
  MatD inverse() const { return {d, -b, -c, a}; }
};

MatD to_matd(const MoebiusMap& m);
MatD mul(const MatD& x, const MatD& y);

// Disks of the Schottky certificate, indexed by disk_index. Throws
// CertificateRequired when the group cannot be certified.
std::vector<DiskD> certificate_disks(const MarkedSchottkyGroup& g);

// The fundamental domain lies to the left: clockwise around interior disks,
// counterclockwise around exterior ones.
inline bool boundary_ccw(const DiskD& d) { return d.exterior; }

// Trapezoid rule for the integral of f(z) dz over the circle.
cdouble contour_integral(const std::function<cdouble(cdouble)>& f, const DiskD& circle, int nodes, bool ccw);

struct PoleTerm {
  cdouble p;
  double w = 0;  // +1 at φ(a_i), -1 at φ(b_i)
};

// ω_i / dz = Σ_φ 1/(z - φ(a_i)) - 1/(z - φ(b_i)) over reduced words φ of
// length <= max_len whose last letter is not ±i. Terms at ∞ vanish.
class DifferentialEvaluator {
 public:
  DifferentialEvaluator(const MarkedSchottkyGroup& g, int i, int max_len);

  int index() const { return index_; }
  int max_len() const { return max_len_; }
  std::size_t coset_count() const { return cosets_; }
  const std::vector<PoleTerm>& poles() const { return poles_; }
  const std::vector<DiskD>& disks() const { return disks_; }

  // Uses per-disk Laurent expansions where they converge, direct sums elsewhere.
  cdouble operator()(cdouble z) const;
  cdouble direct(cdouble z) const;

 private:
  struct Cluster {
    DiskD disk;
    std::vector<cdouble> moments;      // expansion coefficients in x = R/(z-c) or (z-c)/R
    std::vector<PoleTerm> aggregated;  // poles folded into the moments
    std::vector<PoleTerm> near;        // summed explicitly
  };

  int index_;
  int max_len_;
  std::size_t cosets_ = 0;
  std::vector<DiskD> disks_;
  std::vector<PoleTerm> poles_;
  std::vector<PoleTerm> loose_;  // poles outside every disk (none for a certified group)
  std::vector<Cluster> clusters_;
};

struct NormalizationCheck {
  std::vector<std::vector<cdouble>> m;  // m[i][j] = (1/2πi) ∮_{C_j} ω_i
  double max_error = 0;                 // max |m - I|
};

// C_j is the boundary of disk D_j (the one holding the repulsive fixed point
// of γ_j), oriented as the boundary of the fundamental domain.
NormalizationCheck check_normalization(const MarkedSchottkyGroup& g, int max_len, int nodes);

struct BetaPath {
  std::vector<cdouble> vertices;  // z0, waypoints..., γ_j z0
  double clearance = 0;           // smallest sampled gap to the disks
};

struct PeriodMatrix {
  int g = 0;
  int max_len = 0;
  std::vector<std::vector<cdouble>> tau;        // raw integrals
  std::vector<std::vector<cdouble>> tau_sym;    // off-diagonal integer shifts removed, then symmetrized
  double asymmetry = 0;                          // max distance of τ_ij - τ_ji to the nearest integer
  std::vector<double> im_eigenvalues;
  bool im_positive_definite = false;
  std::vector<BetaPath> paths;
  NormalizationCheck normalization;
};

// β_j runs from z0 on C_j to γ_j z0 on C_{-j} inside the closure of the
// fundamental domain: a straight segment if one clears the disks, otherwise
// a polyline through one waypoint. Throws PathCrossesCircle if none is found.
BetaPath find_beta_path(const std::vector<DiskD>& disks, const MatD& gamma, int j);

// Gauss-Kronrod integral of f(z) dz along a polyline.
cdouble path_integral(const std::function<cdouble(cdouble)>& f, const std::vector<cdouble>& vertices);

PeriodMatrix period_matrix(const MarkedSchottkyGroup& g, int max_len, int nodes);

}  // namespace schottky
