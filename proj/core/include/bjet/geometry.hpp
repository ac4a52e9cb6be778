#ifndef BJET_GEOMETRY_HPP_
#define BJET_GEOMETRY_HPP_

#include <complex>
#include <span>
#include <vector>

#include "bjet/errors.hpp"
#include "bjet/multi_index.hpp"

namespace bjet {

using Complex = std::complex<double>;
using PointCn = std::vector<Complex>;

// Membership tests are exact inequalities up to this tolerance.
inline constexpr double kGeomTol = 1e-12;

enum class DomainKind { UnitDisc, UnitBall, Polydisc, Box };

/// Axis-aligned rectangle in one complex coordinate.
struct Rect {
  double re_min, re_max, im_min, im_max;
  bool contains(Complex z, double tol = kGeomTol) const {
    return z.real() > re_min - tol && z.real() < re_max + tol && z.imag() > im_min - tol &&
           z.imag() < im_max + tol;
  }
};

/// A bounded region in C^m of one of the catalog shapes. Used both for the
/// normal extent of fiber slices and for the tangential footprint of S.
struct CnRegion {
  enum class Kind { Point, Ball, Polydisc, Box } kind = Kind::Point;
  int dim = 0;
  double ball_radius = 0.0;    // Ball
  std::vector<double> radii;   // Polydisc
  std::vector<Rect> rects;     // Box

  bool contains(std::span<const Complex> z, double tol = kGeomTol) const;

  /// sup { r >= 0 : r*u stays inside }, for |u| = 1. May be +inf for boxes
  /// with a degenerate direction component; catalog regions are bounded so
  /// the combined minimum is finite.
  double ray_radius(std::span<const Complex> u) const;

  /// Radius of the largest centered ball contained in the region.
  double inscribed_radius() const;

  /// True when the ray radius is direction-independent (balls, discs).
  bool radially_symmetric() const {
    return kind == Kind::Ball || (kind == Kind::Polydisc && dim == 1);
  }

  /// Angular locations where the ray radius loses smoothness, as quadrature
  /// breakpoints: theta values in [0, 2pi) for dim 1 (box corners),
  /// w = |u_1|^2 - |u_2|^2 values for dim-2 polydiscs. Empty when smooth.
  std::vector<double> angular_breaks() const;

  /// sup of |z|^2 over the region.
  double sup_sqnorm() const;

  /// Euclidean (Lebesgue) volume; 1 for a point by the counting convention.
  double volume() const;
};

struct DomainSpec {
  DomainKind kind = DomainKind::UnitDisc;
  int n = 1;
  std::vector<double> radii;  // Polydisc
  std::vector<Rect> rects;    // Box

  static DomainSpec unit_disc();
  static DomainSpec unit_ball(int n);
  static DomainSpec polydisc(std::vector<double> radii);
  static DomainSpec box(std::vector<Rect> rects);

  void validate() const;
  bool contains(std::span<const Complex> z, double tol = kGeomTol) const;
  double sup_sqnorm() const;
  /// sup of |z_1|^2 + ... + |z_k|^2 over D.
  double sup_normal_sqnorm(int k) const;
};

struct SubmanifoldSpec {
  int k = 1;  // codimension; S = {z_1 = ... = z_k = 0} ^ D
  void validate(const DomainSpec& dom) const;
};

/// The slice U_x = { z' : (z', x) in D } through a base point x of S,
/// together with the density A of dV_{U_x} against Lebesgue measure
/// (identically 1 for the coordinate-subspace catalog).
struct FiberSlice {
  PointCn base_point;  // tangential coordinates, size n-k
  int k = 1;
  CnRegion extent;
  double density = 1.0;

  PointCn embed(std::span<const Complex> z_normal) const;
};

FiberSlice fiber_slice(const DomainSpec& dom, const SubmanifoldSpec& sub,
                       std::span<const Complex> x);

/// Footprint of S in the tangential coordinates z_{k+1..n}.
CnRegion tangential_region(const DomainSpec& dom, const SubmanifoldSpec& sub);

/// Euclidean volume of S; for k = n (a point) the counting convention gives 1.
double submanifold_volume(const DomainSpec& dom, const SubmanifoldSpec& sub);

}  // namespace bjet

#endif  // BJET_GEOMETRY_HPP_
