#ifndef BJET_BERGMAN_HPP_
#define BJET_BERGMAN_HPP_

#include <string>

#include "bjet/jet.hpp"
#include "bjet/jet_metric.hpp"
#include "bjet/linalg.hpp"
#include "bjet/quadrature.hpp"

namespace bjet {

/// Finite-dimensional model of A^2(D, phi + (p+k-2)G + q psi): monomials
/// z^alpha with normal degree >= p-1 (the integrability threshold) and total
/// degree <= max_degree, in graded lexicographic order.
struct BasisTruncation {
  int n = 1, k = 1, p = 2;
  int max_degree = 8;  // N; default p+6 chosen by make()
  std::vector<MultiIndex> index_set;

  static BasisTruncation make(int n, int k, int p, int max_degree = -1);

  std::size_t size() const { return index_set.size(); }
  /// Position of alpha in the basis, -1 if absent.
  int find(const MultiIndex& alpha) const;
};

struct GramMatrix {
  BasisTruncation basis;
  /// entries(i, j) = int_D z^{a_j} conj(z^{a_i}) e^{-w} dlambda, so the
  /// squared norm of h = sum c_j z^{a_j} is c^H entries c.
  MatrixXc entries;
  std::string weight_tag;
  double max_tail = 0.0;  // worst relative deepest-panel contribution
};

/// Monomial Gram matrix for the (s, q) family weight
/// phi + (p+k-2) G + q max(G-s, 0). Hermitian by construction (rank-1
/// accumulation), radial panels split at the psi kink.
GramMatrix gram(const BasisTruncation& trunc, const ModelContext& ctx, const FamilyParams& fp,
                const QuadratureConfig& cfg);

/// Functional xi_g(h) = int_S <h-hat, g> dV_S restricted to the basis.
struct DualFunctional {
  JetSection source;
  BasisTruncation basis;
  VectorXc moments;  // moments(i) = xi_g(z^{a_i}); zero off normal degree p-1
};

DualFunctional functional_moments(const JetSection& g, const BasisTruncation& trunc,
                                  const ModelContext& ctx, const QuadratureConfig& cfg);

/// Exact dual norm of xi on the truncated space: conj(m)^* Gram^{-1} conj(m).
/// Throws ConditioningError (with the pivot index) when Cholesky fails.
double dual_norm(const DualFunctional& xi, const GramMatrix& gm);

struct SweepRow {
  double s = 0.0;
  double norm_sq = 0.0;     // ||xi||^2_{s,q}
  double es_norm_sq = 0.0;  // e^s ||xi||^2_{s,q}
};

/// One Gram + dual norm per grid point; q fixed, p from the basis.
std::vector<SweepRow> dual_norm_sweep(const DualFunctional& xi, const ModelContext& ctx,
                                      std::span<const double> s_grid, double q,
                                      const QuadratureConfig& cfg);

}  // namespace bjet

#endif  // BJET_BERGMAN_HPP_
