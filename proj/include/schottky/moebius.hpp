#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "schottky/numeric.hpp"

namespace schottky {

// A point of the Riemann sphere.
struct ExtPoint {
  Complex z;
  bool infinite = false;

  static ExtPoint inf() { ExtPoint p; p.infinite = true; return p; }
  static ExtPoint at(const Complex& z) { return ExtPoint{z, false}; }
};

Real chordal_distance(const ExtPoint& p, const ExtPoint& q);

struct MoebiusMap {
  Complex a{1}, b{0}, c{0}, d{1};

  static MoebiusMap identity() { return {}; }
  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  // Adjugate: the inverse up to the projective scale det.
  MoebiusMap inverse() const;
  ExtPoint apply(const ExtPoint& z) const;
  Complex apply(const Complex& z) const;
  Complex derivative(const Complex& z) const;  // det/(cz+d)^2
  // Rescale so det = 1.
  MoebiusMap unimodular() const;
  // Rescale so the largest entry has modulus about one.
  void normalize();
  std::array<cdouble, 4> to_cdouble() const;
};

// Composition f∘g, normalized projectively.
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
// Projective equality: all 2x2 minors of [f | g] vanish to tolerance.
bool projectively_equal(const MoebiusMap& f, const MoebiusMap& g, const Real& tol);

struct GaussianRational {
  mpq_class re, im;
  GaussianRational() : re(0), im(0) {}
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  Complex to_complex() const { return Complex(to_real(re), to_real(im)); }
};

GaussianRational operator+(const GaussianRational& x, const GaussianRational& y);
GaussianRational operator-(const GaussianRational& x, const GaussianRational& y);
GaussianRational operator*(const GaussianRational& x, const GaussianRational& y);
bool operator==(const GaussianRational& x, const GaussianRational& y);

// Exact representation used for rational input.
struct ExactMoebiusMap {
  GaussianRational a{1}, b{0}, c{0}, d{1};

  GaussianRational det() const { return a * d - b * c; }
  ExactMoebiusMap inverse() const;
  // Divide all entries by the gcd of numerators over the lcm of denominators.
  void reduce_content();
  MoebiusMap to_floating() const;
};

ExactMoebiusMap compose(const ExactMoebiusMap& f, const ExactMoebiusMap& g);

struct FixedPointPair {
  ExtPoint attractive;
  ExtPoint repulsive;
  Complex multiplier;  // |q| < 1
};

// Multiplier from q + 1/q + 2 = tr^2/det. Throws ParabolicOrElliptic when
// ||q| - 1| < 2^(-P/2).
Complex multiplier(const MoebiusMap& m);
// Multiplier from t = tr^2/det, no loxodromic check.
Complex multiplier_from_trace_ratio(const Complex& t);
FixedPointPair fixed_points(const MoebiusMap& m);
// The loxodromic map with given fixed points and multiplier.
MoebiusMap from_fixed_points(const ExtPoint& attractive, const ExtPoint& repulsive, const Complex& q);

// A closed disk on the sphere bounded by a circle. For exterior disks the set
// is {|z - center| >= radius} together with infinity.
struct Disk {
  Complex center;
  Real radius;
  bool exterior = false;

  bool contains(const Complex& z) const;
  // Signed distance to the boundary, positive outside the disk set.
  Real boundary_gap(const Complex& z) const;
  Disk image(const MoebiusMap& m) const;
};

// Disk index of letter i (>0) or -i: 2(|i|-1) + (i<0).
inline int disk_index(int letter) { return 2 * ((letter < 0 ? -letter : letter) - 1) + (letter < 0); }

struct SchottkyCertificate {
  std::vector<Disk> disks;  // indexed by disk_index
  Real margin;              // minimal gap between the disks
  Real boundary_error;      // max deviation of generator images of boundary samples
  std::string source;       // "given" or "isometric"
};

struct MarkedSchottkyGroup {
  int rank = 0;
  std::vector<MoebiusMap> generators;
  std::vector<FixedPointPair> fixed;
  std::optional<std::vector<Disk>> circles;
  unsigned precision_bits = kDefaultPrecisionBits;
};

MarkedSchottkyGroup make_group(std::vector<MoebiusMap> generators,
                               std::optional<std::vector<Disk>> circles = std::nullopt,
                               unsigned precision_bits = working_precision_bits());

bool is_normalized(const MarkedSchottkyGroup& g, const Real& tol);
// Conjugate so that a(γ1) = 0, b(γ1) = ∞, a(γ2) = 1.
MarkedSchottkyGroup normalize_marking(const MarkedSchottkyGroup& g);
// Certify the classical Schottky property with the given circles, or with
// isometric circles (annuli for generators fixing infinity) when none are given.
SchottkyCertificate validate_schottky(const MarkedSchottkyGroup& g);

}  // namespace schottky
