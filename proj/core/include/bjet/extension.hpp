#ifndef BJET_EXTENSION_HPP_
#define BJET_EXTENSION_HPP_

#include "bjet/bergman.hpp"

namespace bjet {

struct ExtensionProblem {
  JetSection jet;
  ModelContext ctx;
  BasisTruncation trunc;

  void validate() const;
};

struct ExtensionResult {
  BasisTruncation basis;
  VectorXc coefficients;     // aligned with the basis; fixed block pinned to the jet
  double primal_norm_sq = 0.0;

  CoeffMap coefficient_map() const;
};

/// Minimal-norm holomorphic extension on the truncation: coefficients on
/// normal degree p-1 are pinned to the jet, the I_S^p block minimizes the
/// quadratic form of the q=0, s=0 Gram (a Hermitian Schur solve).
ExtensionResult minimal_extension(const ExtensionProblem& prob, const QuadratureConfig& cfg);

/// Dual quotient value: max over probe sections g of |xi_g(F)|^2 / ||xi_g||^2
/// with the q=0 Gram. With the jet itself as probe this attains the primal
/// value in the radial cases.
double quotient_norm_dual(const ExtensionProblem& prob, std::span<const JetSection> probes,
                          const QuadratureConfig& cfg);

struct BoundReport {
  double primal_norm_sq = 0.0;
  double jet_norm_sq = 0.0;
  double ratio = 0.0;  // 0 for the zero jet by convention
  double tol = 5e-3;
  bool satisfied = false;
};

/// Extension-bound verdict: primal <= jet norm (ratio <= 1 + tol).
BoundReport verify_optimal_bound(const ExtensionProblem& prob, const QuadratureConfig& cfg,
                                 double tol = 5e-3);

}  // namespace bjet

#endif  // BJET_EXTENSION_HPP_
