#ifndef BJET_QUADRATURE_HPP_
#define BJET_QUADRATURE_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bjet/geometry.hpp"
#include "bjet/weights.hpp"

namespace bjet {

struct QuadratureConfig {
  int radial_order = 12;      // Gauss-Legendre points per radial panel
  int angular_order = 16;     // points per angular dimension
  int tangential_order = 12;  // points per tangential dimension
  int panel_count = 4;        // radial panels per unit of log-radius
  std::int64_t mc_samples = 100000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Shell {t < G < t+1}; the unit width matches the metric definition.
struct ShellSpec {
  double t = -10.0;
  static constexpr double width = 1.0;
};

struct Integral {
  Complex value{0.0, 0.0};
  /// Tensor path: relative contribution of the deepest radial panel
  /// (truncation indicator). Monte Carlo path: standard error.
  double error = 0.0;
};

using ScalarField = std::function<Complex(std::span<const Complex>)>;

/// Default radial floor in v = log|z'|^2; e^{-46} is below double noise for
/// every integrand the library produces (decay exponent >= 1).
inline constexpr double kDefaultVFloor = -46.0;

// ---------------------------------------------------------------------------
// Rules and grids
// ---------------------------------------------------------------------------

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (cached).
const GaussRule& gauss_legendre(int order);

/// Surface area of S^{2k-1}: 2 pi^k / (k-1)!.
double sphere_area(int k);

/// Tensor quadrature for the unit sphere in C^k, k <= 2. For k = 1 this is
/// the m-point trapezoidal rule on the circle; for k = 2 the moduli direction
/// uses Gauss-Legendre in w = |u_1|^2 - |u_2|^2, which integrates polynomial
/// integrands exactly. Weights sum to sphere_area(k). `breaks` are kink
/// locations of the integrand (theta values for k = 1, w values for k = 2)
/// where the rule switches to panelwise Gauss-Legendre.
struct AngularGrid {
  std::vector<PointCn> dirs;
  std::vector<double> weights;
};
AngularGrid make_angular_grid(int k, int order, std::span<const double> breaks = {});

using Panel = std::pair<double, double>;

struct RadialLayout {
  double v_min = kDefaultVFloor;
  double v_max = 0.0;
  std::vector<double> kinks;  // forced panel boundaries (e.g. G = s)
  double cap_from = 0.0;      // if cap_width > 0: max panel width for v >= cap_from
  double cap_width = 0.0;
  bool graded = true;         // widen panels away from v_max (fixed schedule)
};

/// Panel decomposition of [v_min, v_max]. The panel density near v_max is
/// panels_per_unit; a graded layout widens panels far below v_max where all
/// catalog integrands are pure exponentials.
std::vector<Panel> radial_panels(const RadialLayout& layout, int panels_per_unit);

/// Solves v + gamma(e^v) = w on the slice (G = w). The catalog gammas are
/// radial with small slope, so the equation is monotone; solved by bisection.
double invert_green_on_slice(const GreenSpec& g, const FiberSlice& slice, double w);

/// Tangential quadrature nodes for the footprint of S (point, disc products,
/// boxes, balls of complex dimension <= 2).
struct TangNode {
  PointCn x;
  double w = 1.0;
};
std::vector<TangNode> tangential_nodes(const CnRegion& region, int radial_order,
                                       int angular_count);

// ---------------------------------------------------------------------------
// Integration over fibers, shells, and the domain
// ---------------------------------------------------------------------------

/// Integral over the whole slice. Tensor Gauss-Legendre in log-radius and
/// angles for k <= 2; stratified Monte Carlo for k >= 3. The integrand
/// receives full ambient points (z', x).
Integral integrate_fiber(const FiberSlice& slice, const ScalarField& f,
                         const QuadratureConfig& cfg, double v_floor = kDefaultVFloor);

/// Integral over {g_floor < G < g_ceiling} within the slice; g_kinks are
/// G-levels that force panel boundaries (after inversion to v). Pass
/// +-infinity to leave a side unconstrained.
Integral integrate_fiber_region(const ModelContext& ctx, const FiberSlice& slice,
                                const ScalarField& f, const QuadratureConfig& cfg,
                                double g_ceiling, double v_floor = kDefaultVFloor,
                                std::span<const double> g_kinks = {},
                                double g_floor = -std::numeric_limits<double>::infinity());

/// Integral over the fiber shell {t < G < t+1}. Throws RangeError when the
/// shell does not fit inside the slice, reporting the maximal admissible t.
/// g_kinks (G-levels, e.g. the psi kink at G = s) force panel boundaries.
Integral integrate_fiber_shell(const ModelContext& ctx, const FiberSlice& slice,
                               ShellSpec shell, const ScalarField& f,
                               const QuadratureConfig& cfg,
                               std::span<const double> g_kinks = {});

/// Fubini assembly over all of D: tangential nodes times fiber integrals.
Integral integrate_domain(const ModelContext& ctx, const ScalarField& f,
                          const QuadratureConfig& cfg, double v_floor = kDefaultVFloor);

/// Shell integral over all of D: tangential nodes times fiber shells.
Integral integrate_domain_shell(const ModelContext& ctx, ShellSpec shell,
                                const ScalarField& f, const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Sphere integrals
// ---------------------------------------------------------------------------

/// Exact sphere pairing for homogeneous coefficient maps f, g in k normal
/// variables: sum_a f_a conj(g_a) * 2 pi^k a! / (k-1+|a|)!. Distinct
/// monomials are orthogonal. Throws ContractViolation for non-homogeneous
/// input.
Complex sphere_integral(const std::map<MultiIndex, Complex>& f,
                        const std::map<MultiIndex, Complex>& g, int k);

/// Closed-form sphere moment of |u^alpha|^2.
double sphere_monomial_moment(const MultiIndex& alpha, int k);

// ---------------------------------------------------------------------------
// Monte Carlo paths (stratified; 8 replicates; deterministic for fixed seed)
// ---------------------------------------------------------------------------

/// Monte Carlo sphere integral of R over S^{2k-1}. k <= 2 uses a stratified
/// product grid in the moduli/phase coordinates; k >= 3 stratifies nothing
/// and normalizes complex Gaussians.
Integral sphere_integral_mc(int k, const ScalarField& R, const QuadratureConfig& cfg);

/// Monte Carlo fiber integral, stratified in log-radius; sampling is
/// confined to [v_floor, v_ceiling] in v = log|z'|^2.
Integral integrate_fiber_mc(const FiberSlice& slice, const ScalarField& f,
                            const QuadratureConfig& cfg, double v_floor = kDefaultVFloor,
                            double v_ceiling = std::numeric_limits<double>::infinity());

}  // namespace bjet

#endif  // BJET_QUADRATURE_HPP_
