#ifndef BJET_JET_METRIC_HPP_
#define BJET_JET_METRIC_HPP_

#include <span>
#include <utility>
#include <vector>

#include "bjet/jet.hpp"
#include "bjet/quadrature.hpp"

namespace bjet {

/// Convergence flag threshold: last two shell estimates must agree to this
/// relative tolerance, else the run is flagged nonconvergent.
inline constexpr double kShellConvergenceTol = 1e-5;

struct MetricValue {
  Complex value{0.0, 0.0};  // limit estimate: the deepest shell value
  std::vector<std::pair<double, Complex>> shell_estimates;
  Complex extrapolated{0.0, 0.0};  // equals value; no rate is fabricated
  Complex closed_form{0.0, 0.0};
  bool converged = false;
  bool agreement = false;
  double agreement_tol = 1e-4;
};

/// Shell-limit metric: evaluates the shell integral of
/// f conj(g) e^{-phi-(p+k-1)G} dV_{U_x} along the t-schedule and reports the
/// deepest value as the limit estimate, side by side with the closed form.
MetricValue metric_shell(const JetElement& fx, const JetElement& gx, const ModelContext& ctx,
                         const QuadratureConfig& cfg, std::span<const double> t_schedule,
                         double agreement_tol = 1e-4);

/// Closed-form metric 1/2 e^{-phi(x)-(p+k-1)gamma(x)} A(x) int_{S^{2k-1}} f conj(g).
Complex metric_closed_form(const JetElement& fx, const JetElement& gx, const ModelContext& ctx);

/// ||f||^2_J = int_S <f, f> dV_S via tangential quadrature of the closed form.
double section_norm_sq(const JetSection& f, const ModelContext& ctx,
                       const QuadratureConfig& cfg);

/// int_S <f, g> dV_S.
Complex section_pairing(const JetSection& f, const JetSection& g, const ModelContext& ctx,
                        const QuadratureConfig& cfg);

/// Shell integral of a conj(b) e^{-phi-(p+k-1)G} over {t < G < t+1} in the
/// slice; a, b are polynomials in the normal variables (not necessarily
/// homogeneous). Building block for the metric and the perturbation check.
Complex weighted_shell_pairing(const CoeffMap& a, const CoeffMap& b, int p,
                               const ModelContext& ctx, const FiberSlice& slice, double t,
                               const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Invariance checks
// ---------------------------------------------------------------------------

struct GapReport {
  std::vector<double> t;
  std::vector<Complex> reference;
  std::vector<Complex> variant;
  std::vector<double> gap;
  double final_gap = 0.0;
};

/// Shell metric of f + r versus f along the schedule; r must vanish to
/// normal order >= p.
GapReport verify_perturbation_invariance(const JetElement& fx, const CoeffMap& remainder,
                                         const ModelContext& ctx, const QuadratureConfig& cfg,
                                         std::span<const double> t_schedule);

struct RotationReport {
  Complex original{0.0, 0.0};
  Complex rotated{0.0, 0.0};
  double gap = 0.0;
  // Monte Carlo cross-check of the sphere factor (optional)
  Complex mc_original{0.0, 0.0};
  Complex mc_rotated{0.0, 0.0};
  double mc_gap = 0.0;
  double mc_stderr = 0.0;
};

/// Metric of f(U z') versus f for a unitary U acting on the normal
/// coordinates; requires phi, gamma radial in z' at the base point.
RotationReport verify_rotation_invariance(const JetElement& fx, const MatrixXc& unitary,
                                          const ModelContext& ctx, const QuadratureConfig& cfg,
                                          bool with_monte_carlo = false);

struct FubiniReport {
  double lhs = 0.0;  // int_S <g, g> dV_S
  std::vector<std::pair<double, Complex>> rhs;  // full-domain shell values
  double final_gap = 0.0;
};

/// Compares int_S <g,g> dV_S with full-domain shell integrals of
/// |extension|^2 e^{-phi-(p+k-1)G}.
FubiniReport verify_fubini(const JetSection& g, const ScalarField& extension,
                           const ModelContext& ctx, const QuadratureConfig& cfg,
                           std::span<const double> t_schedule);

/// Same with the canonical polynomial extension of g.
FubiniReport verify_fubini(const JetSection& g, const ModelContext& ctx,
                           const QuadratureConfig& cfg, std::span<const double> t_schedule);

}  // namespace bjet

#endif  // BJET_JET_METRIC_HPP_
