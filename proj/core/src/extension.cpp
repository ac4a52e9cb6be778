#include "bjet/extension.hpp"

#include <cmath>
#include <string>

#include "bjet/jet_metric.hpp"

namespace bjet {

void ExtensionProblem::validate() const {
  jet.validate();
  if (jet.n != trunc.n || jet.k != trunc.k || jet.p != trunc.p)
    throw ContractViolation("extension: jet does not match the truncation");
  if (jet.tangential_degree() + (jet.p - 1) > trunc.max_degree)
    throw ContractViolation("extension: jet exceeds the truncation degree");
  bool has_constraint = false;
  for (const MultiIndex& idx : trunc.index_set)
    if (idx.normal_degree(trunc.k) == trunc.p - 1) {
      has_constraint = true;
      break;
    }
  if (!has_constraint)
    throw ContractViolation("extension: no constraint indices in the basis");
}

CoeffMap ExtensionResult::coefficient_map() const {
  CoeffMap out;
  for (std::size_t i = 0; i < basis.index_set.size(); ++i) {
    const Complex c = coefficients(static_cast<Eigen::Index>(i));
    if (c != Complex{0.0, 0.0}) out[basis.index_set[i]] = c;
  }
  return out;
}

namespace {

// Pinned coefficients: the jet's own coefficients on normal degree p-1.
VectorXc pinned_block(const ExtensionProblem& prob, const std::vector<int>& fixed) {
  const CoeffMap jet_coeffs = canonical_extension(prob.jet);
  VectorXc a = VectorXc::Zero(static_cast<Eigen::Index>(fixed.size()));
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const MultiIndex& idx = prob.trunc.index_set[static_cast<std::size_t>(fixed[i])];
    const auto it = jet_coeffs.find(idx);
    if (it != jet_coeffs.end()) a(static_cast<Eigen::Index>(i)) = it->second;
  }
  return a;
}

void split_indices(const BasisTruncation& t, std::vector<int>& fixed, std::vector<int>& free_idx) {
  for (std::size_t i = 0; i < t.index_set.size(); ++i) {
    if (t.index_set[i].normal_degree(t.k) == t.p - 1)
      fixed.push_back(static_cast<int>(i));
    else
      free_idx.push_back(static_cast<int>(i));
  }
}

}  // namespace

ExtensionResult minimal_extension(const ExtensionProblem& prob, const QuadratureConfig& cfg) {
  prob.validate();
  const FamilyParams base{0.0, 0.0, prob.trunc.p};
  const GramMatrix gm = gram(prob.trunc, prob.ctx, base, cfg);

  std::vector<int> fixed, free_idx;
  split_indices(prob.trunc, fixed, free_idx);
  const VectorXc a = pinned_block(prob, fixed);

  ExtensionResult res;
  res.basis = prob.trunc;
  res.coefficients = VectorXc::Zero(static_cast<Eigen::Index>(prob.trunc.size()));
  for (std::size_t i = 0; i < fixed.size(); ++i)
    res.coefficients(fixed[i]) = a(static_cast<Eigen::Index>(i));

  if (!free_idx.empty()) {
    const Eigen::Index nf = static_cast<Eigen::Index>(free_idx.size());
    const Eigen::Index na = static_cast<Eigen::Index>(fixed.size());
    MatrixXc m_rr(nf, nf), m_rf(nf, na);
    for (Eigen::Index i = 0; i < nf; ++i) {
      for (Eigen::Index j = 0; j < nf; ++j)
        m_rr(i, j) = gm.entries(free_idx[static_cast<std::size_t>(i)],
                                free_idx[static_cast<std::size_t>(j)]);
      for (Eigen::Index j = 0; j < na; ++j)
        m_rf(i, j) = gm.entries(free_idx[static_cast<std::size_t>(i)],
                                fixed[static_cast<std::size_t>(j)]);
    }
    try {
      const CholeskyFactor chol(m_rr);
      const VectorXc x = chol.solve(-(m_rf * a));
      for (Eigen::Index i = 0; i < nf; ++i)
        res.coefficients(free_idx[static_cast<std::size_t>(i)]) = x(i);
    } catch (const ConditioningError& e) {
      throw ConditioningError(std::string("minimal_extension: reduced system singular: ") +
                                  e.what(),
                              e.pivot >= 0 ? free_idx[static_cast<std::size_t>(e.pivot)] : -1);
    }
  }

  const Complex qf = (res.coefficients.adjoint() * gm.entries * res.coefficients)(0, 0);
  res.primal_norm_sq = qf.real();
  return res;
}

double quotient_norm_dual(const ExtensionProblem& prob, std::span<const JetSection> probes,
                          const QuadratureConfig& cfg) {
  prob.validate();
  if (probes.empty()) throw ContractViolation("quotient_norm_dual: empty probe list");
  const FamilyParams base{0.0, 0.0, prob.trunc.p};
  const GramMatrix gm = gram(prob.trunc, prob.ctx, base, cfg);
  const ExtensionResult feasible = minimal_extension(prob, cfg);

  double best = 0.0;
  for (const JetSection& g : probes) {
    const DualFunctional xi = functional_moments(g, prob.trunc, prob.ctx, cfg);
    const double dn = dual_norm(xi, gm);
    if (!(dn > 0.0))
      throw ContractViolation("quotient_norm_dual: probe induces the zero functional");
    const Complex action = (xi.moments.transpose() * feasible.coefficients)(0, 0);
    best = std::max(best, std::norm(action) / dn);
  }
  return best;
}

BoundReport verify_optimal_bound(const ExtensionProblem& prob, const QuadratureConfig& cfg,
                                 double tol) {
  BoundReport rep;
  rep.tol = tol;
  rep.jet_norm_sq = section_norm_sq(prob.jet, prob.ctx, cfg);
  if (prob.jet.is_zero()) {
    // zero jet: F0 = 0, ratio defined as 0
    rep.primal_norm_sq = 0.0;
    rep.ratio = 0.0;
    rep.satisfied = true;
    return rep;
  }
  const ExtensionResult res = minimal_extension(prob, cfg);
  rep.primal_norm_sq = res.primal_norm_sq;
  rep.ratio = rep.jet_norm_sq > 0.0 ? rep.primal_norm_sq / rep.jet_norm_sq : 0.0;
  rep.satisfied = rep.primal_norm_sq <= rep.jet_norm_sq * (1.0 + tol);
  return rep;
}

}  // namespace bjet
