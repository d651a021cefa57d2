#include "schottky/moebius.hpp"

#include <algorithm>

#include "schottky/error.hpp"

namespace schottky {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

Real max_abs_entry(const MoebiusMap& m) {
  Real r = abs(m.a.re);
  for (const Complex* e : {&m.a, &m.b, &m.c, &m.d}) {
    r = std::max(r, abs(e->re));
    r = std::max(r, abs(e->im));
  }
  return r;
}

Real half_precision_tol() { return pow2(-static_cast<int>(working_precision_bits()) / 2); }

// Circle through three finite points, or nullopt when they are collinear.
std::optional<std::pair<Complex, Real>> circumcircle(const Complex& p, const Complex& q, const Complex& r) {
  Complex u = q - p, v = r - p;
  Real den = 2 * (u.re * v.im - u.im * v.re);
  if (abs(den) <= pow2(-static_cast<int>(working_precision_bits()) + 8) * (norm(u) + norm(v))) return std::nullopt;
  Real nu = norm(u), nv = norm(v);
  Complex center(p.re + (v.im * nu - u.im * nv) / den, p.im + (u.re * nv - v.re * nu) / den);
  return std::make_pair(center, abs(center - p));
}

MoebiusMap conjugate(const MoebiusMap& p, const MoebiusMap& g) {
  return compose(compose(p, g), p.inverse());
}

}  // namespace

Real chordal_distance(const ExtPoint& p, const ExtPoint& q) {
  if (p.infinite && q.infinite) return Real(0);
  if (p.infinite) return 2 / sqrt(1 + norm(q.z));
  if (q.infinite) return 2 / sqrt(1 + norm(p.z));
  return 2 * abs(p.z - q.z) / sqrt((1 + norm(p.z)) * (1 + norm(q.z)));
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap{d, -b, -c, a}; }

ExtPoint MoebiusMap::apply(const ExtPoint& z) const {
  if (z.infinite) {
    if (c.is_zero()) return ExtPoint::inf();
    return ExtPoint::at(a / c);
  }
  Complex den = c * z.z + d;
  if (den.is_zero()) return ExtPoint::inf();
  return ExtPoint::at((a * z.z + b) / den);
}

Complex MoebiusMap::apply(const Complex& z) const { return (a * z + b) / (c * z + d); }

Complex MoebiusMap::derivative(const Complex& z) const {
  Complex den = c * z + d;
  return det() / (den * den);
}

MoebiusMap MoebiusMap::unimodular() const {
  Complex s = sqrt(det());
  if (s.is_zero()) fail(ErrorCode::InvalidParameter, "singular matrix");
  return MoebiusMap{a / s, b / s, c / s, d / s};
}

void MoebiusMap::normalize() {
  Real m = max_abs_entry(*this);
  if (m == 0) fail(ErrorCode::InvalidParameter, "zero matrix");
  for (Complex* e : {&a, &b, &c, &d}) {
    e->re /= m;
    e->im /= m;
  }
}

std::array<cdouble, 4> MoebiusMap::to_cdouble() const {
  return {a.to_cdouble(), b.to_cdouble(), c.to_cdouble(), d.to_cdouble()};
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  MoebiusMap r{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
  r.normalize();
  return r;
}

bool projectively_equal(const MoebiusMap& f, const MoebiusMap& g, const Real& tol) {
  const Complex* x[4] = {&f.a, &f.b, &f.c, &f.d};
  const Complex* y[4] = {&g.a, &g.b, &g.c, &g.d};
  Real scale = max_abs_entry(f) * max_abs_entry(g);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (abs(*x[i] * *y[j] - *x[j] * *y[i]) > tol * scale) return false;
  return true;
}

GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
  return GaussianRational(x.re + y.re, x.im + y.im);
}
GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
  return GaussianRational(x.re - y.re, x.im - y.im);
}
GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
  return GaussianRational(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
}
bool operator==(const GaussianRational& x, const GaussianRational& y) { return x.re == y.re && x.im == y.im; }

ExactMoebiusMap ExactMoebiusMap::inverse() const {
  GaussianRational zero;
  return ExactMoebiusMap{d, zero - b, zero - c, a};
}

void ExactMoebiusMap::reduce_content() {
  mpq_class* parts[8] = {&a.re, &a.im, &b.re, &b.im, &c.re, &c.im, &d.re, &d.im};
  mpz_class l = 1, g = 0;
  for (mpq_class* p : parts) l = lcm(l, p->get_den());
  for (mpq_class* p : parts) g = gcd(g, mpz_class(mpq_class(*p * l).get_num()));
  if (g == 0) fail(ErrorCode::InvalidParameter, "zero matrix");
  mpq_class factor(l, g);
  factor.canonicalize();
  for (mpq_class* p : parts) {
    *p *= factor;
    p->canonicalize();
  }
}

MoebiusMap ExactMoebiusMap::to_floating() const {
  return MoebiusMap{a.to_complex(), b.to_complex(), c.to_complex(), d.to_complex()};
}

ExactMoebiusMap compose(const ExactMoebiusMap& f, const ExactMoebiusMap& g) {
  ExactMoebiusMap r{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
  r.reduce_content();
  return r;
}

Complex multiplier_from_trace_ratio(const Complex& t) {
  // q = 2/(u + sqrt(u^2 - 4)) with u = t - 2 and the sign giving the larger
  // denominator, so the small root comes without cancellation.
  Complex u = t - Complex(2);
  if (u.im == 0 && u.re * u.re >= 4) {
    Real s = boost::multiprecision::sqrt(u.re * u.re - 4);
    return Complex(2 / (u.re >= 0 ? Real(u.re + s) : Real(u.re - s)));
  }
  Complex disc = sqrt(u * u - Complex(4));
  Complex big1 = u + disc, big2 = u - disc;
  Complex& big = norm(big1) >= norm(big2) ? big1 : big2;
  return Complex(2) / big;
}

Complex multiplier(const MoebiusMap& m) {
  Complex det = m.det();
  if (det.is_zero()) fail(ErrorCode::InvalidParameter, "singular matrix");
  Complex tr = m.trace();
  Complex q = multiplier_from_trace_ratio(tr * tr / det);
  if (abs(abs(q) - 1) < half_precision_tol())
    fail(ErrorCode::ParabolicOrElliptic, "multiplier on the unit circle");
  return q;
}

FixedPointPair fixed_points(const MoebiusMap& m) {
  FixedPointPair fp;
  fp.multiplier = multiplier(m);
  Real scale = max_abs_entry(m);
  Real tiny = pow2(-static_cast<int>(working_precision_bits()) + 4) * scale;
  if (abs(m.c) <= tiny) {
    Complex dm = m.d - m.a;
    if (abs(dm) <= tiny) fail(ErrorCode::CoincidentFixedPoints, "both fixed points at infinity");
    ExtPoint finite = ExtPoint::at(m.b / dm);
    // z -> λ z + const with λ = a/d; infinity attracts when |λ| > 1.
    if (norm(m.a) > norm(m.d)) {
      fp.attractive = ExtPoint::inf();
      fp.repulsive = finite;
    } else {
      fp.attractive = finite;
      fp.repulsive = ExtPoint::inf();
    }
    return fp;
  }
  // c z^2 + (d - a) z - b = 0, stable root pair.
  Complex B = m.d - m.a;
  Complex disc = sqrt(B * B + Complex(4) * m.b * m.c);
  Complex u1 = -B - disc, u2 = -B + disc;
  Complex u = norm(u1) >= norm(u2) ? u1 : u2;
  if (u.is_zero()) fail(ErrorCode::CoincidentFixedPoints, "degenerate fixed point equation");
  Complex r1 = u / (Complex(2) * m.c);
  Complex r2 = Complex(-2) * m.b / u;
  if (chordal_distance(ExtPoint::at(r1), ExtPoint::at(r2)) <= half_precision_tol())
    fail(ErrorCode::CoincidentFixedPoints, "fixed points coincide");
  // The attractive point has |m'(z)| = |det|/|cz+d|^2 < 1.
  if (norm(m.c * r1 + m.d) >= norm(m.c * r2 + m.d)) {
    fp.attractive = ExtPoint::at(r1);
    fp.repulsive = ExtPoint::at(r2);
  } else {
    fp.attractive = ExtPoint::at(r2);
    fp.repulsive = ExtPoint::at(r1);
  }
  return fp;
}

MoebiusMap from_fixed_points(const ExtPoint& attractive, const ExtPoint& repulsive, const Complex& q) {
  if (chordal_distance(attractive, repulsive) == 0)
    fail(ErrorCode::CoincidentFixedPoints, "attractive and repulsive points coincide");
  // S sends 0 to the attractive point and ∞ to the repulsive one.
  MoebiusMap s;
  if (attractive.infinite) {
    s = MoebiusMap{repulsive.z, Complex(1), Complex(1), Complex(0)};
  } else if (repulsive.infinite) {
    s = MoebiusMap{Complex(1), attractive.z, Complex(0), Complex(1)};
  } else {
    s = MoebiusMap{repulsive.z, attractive.z, Complex(1), Complex(1)};
  }
  MoebiusMap diag{q, Complex(0), Complex(0), Complex(1)};
  return compose(compose(s, diag), s.inverse());
}

bool Disk::contains(const Complex& z) const { return boundary_gap(z) <= 0; }

Real Disk::boundary_gap(const Complex& z) const {
  Real r = abs(z - center);
  return exterior ? Real(radius - r) : Real(r - radius);
}

Disk Disk::image(const MoebiusMap& m) const {
  ExtPoint pts[3];
  const Complex dirs[3] = {Complex(1), Complex(0, 1), Complex(-1)};
  for (int i = 0; i < 3; ++i) {
    Complex p = center + dirs[i] * Complex(radius);
    pts[i] = m.apply(ExtPoint::at(p));
    if (pts[i].infinite) fail(ErrorCode::NotClassicalSchottky, "circle image is a line");
  }
  auto cc = circumcircle(pts[0].z, pts[1].z, pts[2].z);
  if (!cc) fail(ErrorCode::NotClassicalSchottky, "circle image is a line");
  Disk out;
  out.center = cc->first;
  out.radius = cc->second;
  // The image contains ∞ iff the pole of m lies in this disk.
  ExtPoint pole = m.inverse().apply(ExtPoint::inf());
  bool contains_pole = pole.infinite ? exterior : boundary_gap(pole.z) < 0;
  out.exterior = contains_pole;
  return out;
}

MarkedSchottkyGroup make_group(std::vector<MoebiusMap> generators, std::optional<std::vector<Disk>> circles,
                               unsigned precision_bits) {
  if (generators.empty()) fail(ErrorCode::InvalidParameter, "a Schottky group needs at least one generator");
  MarkedSchottkyGroup g;
  g.rank = static_cast<int>(generators.size());
  g.precision_bits = precision_bits;
  for (auto& m : generators) {
    if (m.det().is_zero()) fail(ErrorCode::InvalidParameter, "singular generator");
    g.fixed.push_back(fixed_points(m));
  }
  g.generators = std::move(generators);
  if (circles && circles->size() != static_cast<std::size_t>(2 * g.rank))
    fail(ErrorCode::RankMismatch, "expected 2g circles");
  g.circles = std::move(circles);
  return g;
}

bool is_normalized(const MarkedSchottkyGroup& g, const Real& tol) {
  const auto& f1 = g.fixed[0];
  if (f1.attractive.infinite || abs(f1.attractive.z) > tol || !f1.repulsive.infinite) return false;
  if (g.rank >= 2) {
    const auto& a2 = g.fixed[1].attractive;
    if (a2.infinite || abs(a2.z - Complex(1)) > tol) return false;
  }
  return true;
}

MarkedSchottkyGroup normalize_marking(const MarkedSchottkyGroup& g) {
  const ExtPoint& a1 = g.fixed[0].attractive;
  const ExtPoint& b1 = g.fixed[0].repulsive;
  Real tol = half_precision_tol();
  MoebiusMap p;
  if (g.rank >= 2) {
    const ExtPoint& a2 = g.fixed[1].attractive;
    if (chordal_distance(a2, a1) <= tol || chordal_distance(a2, b1) <= tol)
      fail(ErrorCode::DegenerateMarking, "a(γ2) coincides with a fixed point of γ1");
    if (b1.infinite) {
      p = MoebiusMap{Complex(1), -a1.z, Complex(0), a2.z - a1.z};
    } else if (a1.infinite) {
      p = MoebiusMap{Complex(0), a2.z - b1.z, Complex(1), -b1.z};
    } else if (a2.infinite) {
      p = MoebiusMap{Complex(1), -a1.z, Complex(1), -b1.z};
    } else {
      Complex k = (a2.z - b1.z) / (a2.z - a1.z);
      p = MoebiusMap{k, -k * a1.z, Complex(1), -b1.z};
    }
  } else {
    if (b1.infinite) {
      p = MoebiusMap{Complex(1), -a1.z, Complex(0), Complex(1)};
    } else if (a1.infinite) {
      p = MoebiusMap{Complex(0), Complex(1), Complex(1), -b1.z};
    } else {
      p = MoebiusMap{Complex(1), -a1.z, Complex(1), -b1.z};
    }
  }
  p.normalize();

  MarkedSchottkyGroup out;
  out.rank = g.rank;
  out.precision_bits = g.precision_bits;
  for (int i = 0; i < g.rank; ++i) {
    MoebiusMap m = conjugate(p, g.generators[i]);
    FixedPointPair fp;
    fp.multiplier = g.fixed[i].multiplier;
    fp.attractive = p.apply(g.fixed[i].attractive);
    fp.repulsive = p.apply(g.fixed[i].repulsive);
    if (i == 0) {
      // γ1 is diagonal up to rounding; make it exactly so.
      m.b = Complex();
      m.c = Complex();
      fp.attractive = ExtPoint::at(Complex());
      fp.repulsive = ExtPoint::inf();
    } else if (i == 1) {
      fp.attractive = ExtPoint::at(Complex(1));
    }
    out.generators.push_back(std::move(m));
    out.fixed.push_back(std::move(fp));
  }
  if (g.circles) {
    try {
      std::vector<Disk> disks;
      for (const Disk& d : *g.circles) disks.push_back(d.image(p));
      out.circles = std::move(disks);
    } catch (const Error&) {
      out.circles.reset();  // a circle went through ∞; recompute on demand
    }
  }
  return out;
}

namespace {

Real disk_gap(const Disk& x, const Disk& y) {
  Real dist = abs(x.center - y.center);
  if (x.exterior && y.exterior) return Real(-1);
  if (x.exterior) return x.radius - dist - y.radius;
  if (y.exterior) return y.radius - dist - x.radius;
  return dist - x.radius - y.radius;
}

std::vector<Disk> isometric_disks(const MarkedSchottkyGroup& g) {
  std::vector<Disk> disks(2 * g.rank);
  std::vector<bool> done(2 * g.rank, false);
  int affine = -1;
  for (int i = 0; i < g.rank; ++i) {
    MoebiusMap m = g.generators[i].unimodular();
    Real scale = max_abs_entry(m);
    if (abs(m.c) <= pow2(-static_cast<int>(working_precision_bits()) / 2) * scale) {
      if (affine >= 0) fail(ErrorCode::NotClassicalSchottky, "two generators fix infinity");
      affine = i;
      continue;
    }
    Real r = 1 / abs(m.c);
    disks[2 * i] = Disk{-m.d / m.c, r, false};
    disks[2 * i + 1] = Disk{m.a / m.c, r, false};
    done[2 * i] = done[2 * i + 1] = true;
  }
  if (affine >= 0) {
    const FixedPointPair& fp = g.fixed[affine];
    const Complex f = fp.attractive.infinite ? fp.repulsive.z : fp.attractive.z;
    Real lam = abs(fp.multiplier);
    Real rmax(0), rmin(-1);
    for (int j = 0; j < 2 * g.rank; ++j) {
      if (!done[j]) continue;
      Real dist = abs(disks[j].center - f);
      rmax = std::max(rmax, Real(dist + disks[j].radius));
      Real inner = dist - disks[j].radius;
      if (rmin < 0 || inner < rmin) rmin = inner;
    }
    Real outer;
    if (rmin < 0) {
      outer = 1 / sqrt(lam);  // rank one: any annulus works
    } else {
      if (rmin <= 0 || rmax >= rmin / lam)
        fail(ErrorCode::NotClassicalSchottky, "no separating annulus for the generator fixing infinity");
      outer = sqrt(rmax * rmin / lam);
    }
    // The outer disk sits around ∞; it belongs to whichever fixed point ∞ is.
    Disk big{f, outer, true}, small{f, outer * lam, false};
    if (fp.repulsive.infinite) {
      disks[2 * affine] = big;
      disks[2 * affine + 1] = small;
    } else {
      disks[2 * affine] = small;
      disks[2 * affine + 1] = big;
    }
  }
  return disks;
}

}  // namespace

SchottkyCertificate validate_schottky(const MarkedSchottkyGroup& g) {
  SchottkyCertificate cert;
  if (g.circles) {
    cert.disks = *g.circles;
    cert.source = "given";
  } else {
    cert.disks = isometric_disks(g);
    cert.source = "isometric";
  }
  const int n = 2 * g.rank;
  cert.margin = -1;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Real gap = disk_gap(cert.disks[i], cert.disks[j]);
      if (first || gap < cert.margin) cert.margin = gap;
      first = false;
    }
  if (cert.margin <= 0) fail(ErrorCode::NotClassicalSchottky, "circles are not pairwise disjoint");

  Real tol = std::max(half_precision_tol(), Real(1e-9));
  cert.boundary_error = 0;
  Real pi = boost::math::constants::pi<Real>();
  for (int i = 0; i < g.rank; ++i) {
    const Disk& from = cert.disks[2 * i];
    const Disk& to = cert.disks[2 * i + 1];
    const MoebiusMap& m = g.generators[i];
    for (int s = 0; s < 16; ++s) {
      Real th = 2 * pi * s / 16;
      Complex z = from.center + Complex(from.radius * boost::multiprecision::cos(th),
                                        from.radius * boost::multiprecision::sin(th));
      ExtPoint w = m.apply(ExtPoint::at(z));
      Real err = w.infinite ? Real(1) : Real(abs(abs(w.z - to.center) - to.radius) / to.radius);
      cert.boundary_error = std::max(cert.boundary_error, err);
    }
    // A point just outside the source disk must land inside the target disk.
    Complex probe = from.center + Complex(from.exterior ? Real(from.radius * Real(0.99)) : Real(from.radius * Real(1.01)));
    ExtPoint w = m.apply(ExtPoint::at(probe));
    bool inside = w.infinite ? to.exterior : to.boundary_gap(w.z) < 0;
    if (!inside) fail(ErrorCode::NotClassicalSchottky, "generator " + std::to_string(i + 1) + " reverses its circles");
  }
  if (cert.boundary_error > tol)
    fail(ErrorCode::NotClassicalSchottky, "generator does not map C_i onto C_-i (error " +
                                              to_string(cert.boundary_error, 6) + ")");
  return cert;
}

}  // namespace schottky
