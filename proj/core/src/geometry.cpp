#include "bjet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bjet {

namespace {

double sq(double x) { return x * x; }

double pi_pow(int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= 3.14159265358979323846264338327950288;
  return v;
}

double factorial_d(int m) {
  double v = 1.0;
  for (int i = 2; i <= m; ++i) v *= i;
  return v;
}

// Largest r with r*w inside [a,b]x[c,d] (0 must be interior).
double rect_ray_radius(const Rect& r, Complex w) {
  double rmax = std::numeric_limits<double>::infinity();
  const double x = w.real(), y = w.imag();
  if (x > 0) rmax = std::min(rmax, r.re_max / x);
  if (x < 0) rmax = std::min(rmax, r.re_min / x);
  if (y > 0) rmax = std::min(rmax, r.im_max / y);
  if (y < 0) rmax = std::min(rmax, r.im_min / y);
  return rmax;
}

double rect_inscribed(const Rect& r) {
  return std::min(std::min(-r.re_min, r.re_max), std::min(-r.im_min, r.im_max));
}

double rect_sup_sqmod(const Rect& r) {
  const double re = std::max(sq(r.re_min), sq(r.re_max));
  const double im = std::max(sq(r.im_min), sq(r.im_max));
  return re + im;
}

}  // namespace

// ---------------------------------------------------------------------------
// CnRegion
// ---------------------------------------------------------------------------

bool CnRegion::contains(std::span<const Complex> z, double tol) const {
  switch (kind) {
    case Kind::Point:
      return z.empty();
    case Kind::Ball: {
      double s = 0.0;
      for (const Complex& v : z) s += std::norm(v);
      return s < sq(ball_radius) + tol;
    }
    case Kind::Polydisc:
      for (std::size_t i = 0; i < z.size(); ++i)
        if (std::norm(z[i]) >= sq(radii[i]) + tol) return false;
      return true;
    case Kind::Box:
      for (std::size_t i = 0; i < z.size(); ++i)
        if (!rects[i].contains(z[i], tol)) return false;
      return true;
  }
  return false;
}

double CnRegion::ray_radius(std::span<const Complex> u) const {
  switch (kind) {
    case Kind::Point:
      return 0.0;
    case Kind::Ball:
      return ball_radius;
    case Kind::Polydisc: {
      double rmax = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double m = std::abs(u[i]);
        if (m > 0) rmax = std::min(rmax, radii[i] / m);
      }
      return rmax;
    }
    case Kind::Box: {
      double rmax = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < u.size(); ++i)
        rmax = std::min(rmax, rect_ray_radius(rects[i], u[i]));
      return rmax;
    }
  }
  return 0.0;
}

double CnRegion::inscribed_radius() const {
  switch (kind) {
    case Kind::Point:
      return 0.0;
    case Kind::Ball:
      return ball_radius;
    case Kind::Polydisc:
      return *std::min_element(radii.begin(), radii.end());
    case Kind::Box: {
      double r = std::numeric_limits<double>::infinity();
      for (const Rect& rc : rects) r = std::min(r, rect_inscribed(rc));
      return r;
    }
  }
  return 0.0;
}

std::vector<double> CnRegion::angular_breaks() const {
  if (dim == 1 && kind == Kind::Box) {
    const Rect& r = rects[0];
    std::vector<double> th;
    for (double x : {r.re_min, r.re_max})
      for (double y : {r.im_min, r.im_max}) {
        double a = std::atan2(y, x);
        if (a < 0) a += 2.0 * 3.14159265358979323846264338327950288;
        th.push_back(a);
      }
    std::sort(th.begin(), th.end());
    return th;
  }
  if (dim == 2 && kind == Kind::Polydisc) {
    // rays leave through |u_1|/r_1 = |u_2|/r_2
    const double r1 = radii[0], r2 = radii[1];
    return {(r1 * r1 - r2 * r2) / (r1 * r1 + r2 * r2)};
  }
  return {};
}

double CnRegion::sup_sqnorm() const {
  switch (kind) {
    case Kind::Point:
      return 0.0;
    case Kind::Ball:
      return sq(ball_radius);
    case Kind::Polydisc: {
      double s = 0.0;
      for (double r : radii) s += sq(r);
      return s;
    }
    case Kind::Box: {
      double s = 0.0;
      for (const Rect& rc : rects) s += rect_sup_sqmod(rc);
      return s;
    }
  }
  return 0.0;
}

double CnRegion::volume() const {
  switch (kind) {
    case Kind::Point:
      return 1.0;  // counting measure
    case Kind::Ball:
      return pi_pow(dim) / factorial_d(dim) * std::pow(ball_radius, 2 * dim);
    case Kind::Polydisc: {
      double v = 1.0;
      for (double r : radii) v *= pi_pow(1) * sq(r);
      return v;
    }
    case Kind::Box: {
      double v = 1.0;
      for (const Rect& rc : rects) v *= (rc.re_max - rc.re_min) * (rc.im_max - rc.im_min);
      return v;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// DomainSpec
// ---------------------------------------------------------------------------

DomainSpec DomainSpec::unit_disc() {
  DomainSpec d;
  d.kind = DomainKind::UnitDisc;
  d.n = 1;
  return d;
}

DomainSpec DomainSpec::unit_ball(int n) {
  DomainSpec d;
  d.kind = DomainKind::UnitBall;
  d.n = n;
  return d;
}

DomainSpec DomainSpec::polydisc(std::vector<double> radii) {
  DomainSpec d;
  d.kind = DomainKind::Polydisc;
  d.n = static_cast<int>(radii.size());
  d.radii = std::move(radii);
  return d;
}

DomainSpec DomainSpec::box(std::vector<Rect> rects) {
  DomainSpec d;
  d.kind = DomainKind::Box;
  d.n = static_cast<int>(rects.size());
  d.rects = std::move(rects);
  return d;
}

void DomainSpec::validate() const {
  if (n < 1) throw ConfigError("domain: ambient dimension must be >= 1");
  switch (kind) {
    case DomainKind::UnitDisc:
      if (n != 1) throw ConfigError("domain: unit-disc has n = 1");
      break;
    case DomainKind::UnitBall:
      break;
    case DomainKind::Polydisc:
      if (static_cast<int>(radii.size()) != n)
        throw ConfigError("domain: polydisc needs one radius per coordinate");
      for (double r : radii)
        if (!(r > 0)) throw ConfigError("domain: polydisc radii must be positive");
      break;
    case DomainKind::Box:
      if (static_cast<int>(rects.size()) != n)
        throw ConfigError("domain: box needs one rectangle per coordinate");
      for (const Rect& r : rects)
        if (!(r.re_max > r.re_min) || !(r.im_max > r.im_min))
          throw ConfigError("domain: box rectangles must have positive extent");
      break;
  }
}

bool DomainSpec::contains(std::span<const Complex> z, double tol) const {
  if (static_cast<int>(z.size()) != n) return false;
  switch (kind) {
    case DomainKind::UnitDisc:
      return std::norm(z[0]) < 1.0 + tol;
    case DomainKind::UnitBall: {
      double s = 0.0;
      for (const Complex& v : z) s += std::norm(v);
      return s < 1.0 + tol;
    }
    case DomainKind::Polydisc:
      for (int i = 0; i < n; ++i)
        if (std::norm(z[static_cast<std::size_t>(i)]) >= sq(radii[static_cast<std::size_t>(i)]) + tol)
          return false;
      return true;
    case DomainKind::Box:
      for (int i = 0; i < n; ++i)
        if (!rects[static_cast<std::size_t>(i)].contains(z[static_cast<std::size_t>(i)], tol))
          return false;
      return true;
  }
  return false;
}

double DomainSpec::sup_sqnorm() const {
  switch (kind) {
    case DomainKind::UnitDisc:
    case DomainKind::UnitBall:
      return 1.0;
    case DomainKind::Polydisc: {
      double s = 0.0;
      for (double r : radii) s += sq(r);
      return s;
    }
    case DomainKind::Box: {
      double s = 0.0;
      for (const Rect& r : rects) s += rect_sup_sqmod(r);
      return s;
    }
  }
  return 0.0;
}

double DomainSpec::sup_normal_sqnorm(int k) const {
  switch (kind) {
    case DomainKind::UnitDisc:
    case DomainKind::UnitBall:
      return 1.0;
    case DomainKind::Polydisc: {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += sq(radii[static_cast<std::size_t>(i)]);
      return s;
    }
    case DomainKind::Box: {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += rect_sup_sqmod(rects[static_cast<std::size_t>(i)]);
      return s;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// SubmanifoldSpec / slices
// ---------------------------------------------------------------------------

void SubmanifoldSpec::validate(const DomainSpec& dom) const {
  if (k < 1 || k > dom.n) throw ConfigError("submanifold: need 1 <= k <= n");
  // S nonempty: the origin of the normal coordinates must lie in D's section.
  const PointCn origin(static_cast<std::size_t>(dom.n), Complex{0.0, 0.0});
  if (!dom.contains(origin))
    throw ConfigError("submanifold: S = {z'=0} does not meet the domain");
}

PointCn FiberSlice::embed(std::span<const Complex> z_normal) const {
  PointCn z;
  z.reserve(z_normal.size() + base_point.size());
  z.insert(z.end(), z_normal.begin(), z_normal.end());
  z.insert(z.end(), base_point.begin(), base_point.end());
  return z;
}

FiberSlice fiber_slice(const DomainSpec& dom, const SubmanifoldSpec& sub,
                       std::span<const Complex> x) {
  dom.validate();
  sub.validate(dom);
  const int k = sub.k;
  if (static_cast<int>(x.size()) != dom.n - k)
    throw DomainError("fiber_slice: base point has wrong tangential dimension");

  PointCn full(static_cast<std::size_t>(dom.n), Complex{0.0, 0.0});
  std::copy(x.begin(), x.end(), full.begin() + k);
  if (!dom.contains(full)) throw DomainError("fiber_slice: base point not on S");

  FiberSlice s;
  s.base_point.assign(x.begin(), x.end());
  s.k = k;
  s.density = 1.0;
  s.extent.dim = k;
  switch (dom.kind) {
    case DomainKind::UnitDisc:
      s.extent.kind = CnRegion::Kind::Ball;
      s.extent.ball_radius = 1.0;
      break;
    case DomainKind::UnitBall: {
      double t = 0.0;
      for (const Complex& v : x) t += std::norm(v);
      s.extent.kind = CnRegion::Kind::Ball;
      s.extent.ball_radius = std::sqrt(std::max(0.0, 1.0 - t));
      break;
    }
    case DomainKind::Polydisc:
      s.extent.kind = CnRegion::Kind::Polydisc;
      s.extent.radii.assign(dom.radii.begin(), dom.radii.begin() + k);
      break;
    case DomainKind::Box:
      s.extent.kind = CnRegion::Kind::Box;
      s.extent.rects.assign(dom.rects.begin(), dom.rects.begin() + k);
      break;
  }
  return s;
}

CnRegion tangential_region(const DomainSpec& dom, const SubmanifoldSpec& sub) {
  dom.validate();
  sub.validate(dom);
  const int m = dom.n - sub.k;
  CnRegion r;
  r.dim = m;
  if (m == 0) {
    r.kind = CnRegion::Kind::Point;
    return r;
  }
  switch (dom.kind) {
    case DomainKind::UnitDisc:
      throw ConfigError("tangential_region: unit disc has no tangential directions");
    case DomainKind::UnitBall:
      r.kind = CnRegion::Kind::Ball;
      r.ball_radius = 1.0;
      break;
    case DomainKind::Polydisc:
      r.kind = CnRegion::Kind::Polydisc;
      r.radii.assign(dom.radii.begin() + sub.k, dom.radii.end());
      break;
    case DomainKind::Box:
      r.kind = CnRegion::Kind::Box;
      r.rects.assign(dom.rects.begin() + sub.k, dom.rects.end());
      break;
  }
  return r;
}

double submanifold_volume(const DomainSpec& dom, const SubmanifoldSpec& sub) {
  return tangential_region(dom, sub).volume();
}

}  // namespace bjet
