#ifndef BJET_WEIGHTS_HPP_
#define BJET_WEIGHTS_HPP_

#include <span>
#include <utility>
#include <vector>

#include "bjet/geometry.hpp"

namespace bjet {

// ---------------------------------------------------------------------------
// Green-type function G = log(|z_1|^2 + ... + |z_k|^2) + gamma
// ---------------------------------------------------------------------------

/// Catalog of continuous correction terms gamma. All entries depend on the
/// coordinates only through |z_i|^2, so they restrict to radial functions of
/// |z'| on every fiber slice.
struct GammaSpec {
  enum class Kind {
    Zero,        // gamma = 0
    Constant,    // gamma = c
    ScaledNorm,  // gamma = eps * |z|^2, eps >= 0
    RadialBump,  // gamma = a * exp(-|z|^2 / w^2), w > 0
  };
  Kind kind = Kind::Zero;
  double c = 0.0;    // Constant
  double eps = 0.0;  // ScaledNorm
  double a = 0.0;    // RadialBump amplitude
  double w = 1.0;    // RadialBump width

  void validate() const;
  double value(std::span<const Complex> z) const;
  /// Value as a function of |z'|^2 and the squared norm of the tangential part.
  double radial_value(double normal_sqnorm, double tangential_sqnorm) const;
  /// (inf, sup) of gamma over a region with sup |z|^2 = sup_sqnorm.
  std::pair<double, double> bounds(double sup_sqnorm) const;
};

struct GreenSpec {
  int k = 1;
  GammaSpec gamma;

  void validate() const;
};

/// G(z); -inf exactly on S. Throws DomainError when z lies outside D.
double green_value(const GreenSpec& g, const DomainSpec& dom, std::span<const Complex> z);

/// G restricted to a slice, as a function of v = log|z'|^2.
double green_on_slice(const GreenSpec& g, const FiberSlice& slice, double v);

/// psi(s, z) = max(G(z) - s, 0).
double psi_value(const GreenSpec& g, const DomainSpec& dom, double s,
                 std::span<const Complex> z);

// ---------------------------------------------------------------------------
// Continuous psh weight phi
// ---------------------------------------------------------------------------

/// Weight catalog; plurisubharmonicity holds by construction and is declared,
/// not machine-verified.
struct PhiSpec {
  enum class Kind {
    Zero,            // phi = 0
    ScaledSqnorm,    // phi = c * |z|^2, c >= 0
    WeightedSqnorm,  // phi = sum_i c_i |z_i|^2, c_i >= 0
    MaxAffineLog,    // phi = max_j (a_j + b_j * log(eps_j + |z|^2)), b_j >= 0
  };
  struct AffineLogTerm {
    double a = 0.0, b = 0.0, eps = 1.0;
  };
  Kind kind = Kind::Zero;
  double c = 0.0;
  std::vector<double> coeffs;          // WeightedSqnorm
  std::vector<AffineLogTerm> terms;    // MaxAffineLog

  void validate(int n) const;
  double value(std::span<const Complex> z) const;
};

// ---------------------------------------------------------------------------
// Deformation family
// ---------------------------------------------------------------------------

struct FamilyParams {
  double s = 0.0;  // s <= 0
  double q = 0.0;  // q >= 0
  int p = 2;       // jet order, p >= 2

  void validate() const;
};

/// phi(z) + (p+k-2) G(z) + q max(G(z)-s, 0); +inf on S when the G coefficient
/// is positive, so e^{-weight} vanishes there.
double family_weight(const GreenSpec& g, const PhiSpec& phi, const FamilyParams& fp,
                     const DomainSpec& dom, std::span<const Complex> z);

// ---------------------------------------------------------------------------
// Model context: one domain + submanifold + weight pair
// ---------------------------------------------------------------------------

struct ModelContext {
  DomainSpec domain;
  SubmanifoldSpec sub;
  GreenSpec green;
  PhiSpec phi;

  /// Validates all specs and checks negativity of G on D by an exact catalog
  /// bound plus 10^4 quasi-random samples. Throws ConfigError on violation.
  void validate() const;

  FiberSlice slice_at(std::span<const Complex> x) const {
    return fiber_slice(domain, sub, x);
  }
};

/// Largest admissible shell floor: {G < t+1} stays inside the slice for all
/// t <= shell_t_max.
double shell_t_max(const FiberSlice& slice, const GreenSpec& green, const DomainSpec& dom);

}  // namespace bjet

#endif  // BJET_WEIGHTS_HPP_
