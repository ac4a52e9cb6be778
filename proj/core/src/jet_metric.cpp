#include "bjet/jet_metric.hpp"

#include <algorithm>
#include <cmath>

#include "bjet/parallel.hpp"

namespace bjet {

namespace {

void check_schedule(std::span<const double> t_schedule) {
  if (t_schedule.empty()) throw ContractViolation("metric: empty t-schedule");
  for (std::size_t i = 1; i < t_schedule.size(); ++i)
    if (!(t_schedule[i] < t_schedule[i - 1] + 1e-12))
      throw ContractViolation("metric: t-schedule must be decreasing");
}

void check_same_fiber(const JetElement& fx, const JetElement& gx) {
  if (fx.base_point != gx.base_point)
    throw ContractViolation("metric: jet elements live at different base points");
  if (fx.degree() != gx.degree())
    throw ContractViolation("metric: jet elements have different degrees");
}

double phase_prefactor(const ModelContext& ctx, const JetElement& fx, int p) {
  PointCn origin(static_cast<std::size_t>(fx.k), Complex{0.0, 0.0});
  PointCn xhat = origin;
  xhat.insert(xhat.end(), fx.base_point.begin(), fx.base_point.end());
  const double phi0 = ctx.phi.value(xhat);
  const double gamma0 = ctx.green.gamma.value(xhat);
  return std::exp(-phi0 - (p + ctx.sub.k - 1) * gamma0);
}

}  // namespace

Complex weighted_shell_pairing(const CoeffMap& a, const CoeffMap& b, int p,
                               const ModelContext& ctx, const FiberSlice& slice, double t,
                               const QuadratureConfig& cfg) {
  const int k = slice.k;
  const int gcoeff = p + k - 1;
  ScalarField field = [&](std::span<const Complex> z) -> Complex {
    const std::span<const Complex> zn = z.first(static_cast<std::size_t>(k));
    double s = 0.0;
    for (const Complex& v : zn) s += std::norm(v);
    const double G = std::log(s) + ctx.green.gamma.value(z);
    const double w = ctx.phi.value(z) + gcoeff * G;
    return eval_poly(a, zn) * std::conj(eval_poly(b, zn)) * std::exp(-w);
  };
  return integrate_fiber_shell(ctx, slice, ShellSpec{t}, field, cfg).value;
}

Complex metric_closed_form(const JetElement& fx, const JetElement& gx, const ModelContext& ctx) {
  check_same_fiber(fx, gx);
  const int p = fx.jet_order();
  const FiberSlice slice = ctx.slice_at(fx.base_point);
  return 0.5 * phase_prefactor(ctx, fx, p) * slice.density *
         sphere_integral(fx.coeffs, gx.coeffs, fx.k);
}

MetricValue metric_shell(const JetElement& fx, const JetElement& gx, const ModelContext& ctx,
                         const QuadratureConfig& cfg, std::span<const double> t_schedule,
                         double agreement_tol) {
  check_same_fiber(fx, gx);
  check_schedule(t_schedule);
  const int p = fx.jet_order();
  const FiberSlice slice = ctx.slice_at(fx.base_point);

  MetricValue mv;
  mv.agreement_tol = agreement_tol;
  for (double t : t_schedule) {
    const Complex v = weighted_shell_pairing(fx.coeffs, gx.coeffs, p, ctx, slice, t, cfg);
    mv.shell_estimates.emplace_back(t, v);
  }
  mv.value = mv.shell_estimates.back().second;
  mv.extrapolated = mv.value;
  mv.closed_form = metric_closed_form(fx, gx, ctx);

  if (mv.shell_estimates.size() >= 2) {
    const Complex prev = mv.shell_estimates[mv.shell_estimates.size() - 2].second;
    const double scale = std::max(std::abs(mv.value), 1e-300);
    mv.converged = std::abs(mv.value - prev) / scale < kShellConvergenceTol;
  }
  const double cscale = std::max(std::abs(mv.closed_form), 1e-12);
  mv.agreement = std::abs(mv.extrapolated - mv.closed_form) <= agreement_tol * cscale;
  return mv;
}

double section_norm_sq(const JetSection& f, const ModelContext& ctx,
                       const QuadratureConfig& cfg) {
  return section_pairing(f, f, ctx, cfg).real();
}

Complex section_pairing(const JetSection& f, const JetSection& g, const ModelContext& ctx,
                        const QuadratureConfig& cfg) {
  f.validate();
  g.validate();
  if (f.n != g.n || f.k != g.k || f.p != g.p)
    throw ContractViolation("section_pairing: sections live in different jet bundles");
  const CnRegion footprint = tangential_region(ctx.domain, ctx.sub);
  const int ang = std::max(2 * cfg.tangential_order, 2 * (f.tangential_degree() +
                                                          g.tangential_degree()) + 4);
  const auto nodes = tangential_nodes(footprint, cfg.tangential_order, ang);
  std::vector<Complex> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const JetElement fx = f.at(nodes[i].x);
    const JetElement gx = g.at(nodes[i].x);
    terms[i] = nodes[i].w * metric_closed_form(fx, gx, ctx);
  });
  return pairwise_sum(terms);
}

GapReport verify_perturbation_invariance(const JetElement& fx, const CoeffMap& remainder,
                                         const ModelContext& ctx, const QuadratureConfig& cfg,
                                         std::span<const double> t_schedule) {
  fx.validate();
  check_schedule(t_schedule);
  const int p = fx.jet_order();
  for (const auto& [idx, c] : remainder) {
    if (idx.size() != fx.k)
      throw ContractViolation("perturbation: remainder index arity differs from k");
    if (c != Complex{0.0, 0.0} && idx.total_degree() < p)
      throw ContractViolation("perturbation: remainder must vanish to normal order >= p");
  }
  CoeffMap perturbed = fx.coeffs;
  for (const auto& [idx, c] : remainder) perturbed[idx] += c;

  const FiberSlice slice = ctx.slice_at(fx.base_point);
  GapReport rep;
  for (double t : t_schedule) {
    const Complex base = weighted_shell_pairing(fx.coeffs, fx.coeffs, p, ctx, slice, t, cfg);
    const Complex pert = weighted_shell_pairing(perturbed, perturbed, p, ctx, slice, t, cfg);
    rep.t.push_back(t);
    rep.reference.push_back(base);
    rep.variant.push_back(pert);
    rep.gap.push_back(std::abs(pert - base));
  }
  rep.final_gap = rep.gap.back();
  return rep;
}

RotationReport verify_rotation_invariance(const JetElement& fx, const MatrixXc& unitary,
                                          const ModelContext& ctx, const QuadratureConfig& cfg,
                                          bool with_monte_carlo) {
  fx.validate();
  const int k = fx.k;
  if (unitary.rows() != k || unitary.cols() != k)
    throw ContractViolation("rotation: matrix size differs from codimension");
  const MatrixXc gram = unitary.adjoint() * unitary;
  if ((gram - MatrixXc::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12)
    throw ContractViolation("rotation: matrix is not unitary");
  if (ctx.phi.kind == PhiSpec::Kind::WeightedSqnorm) {
    for (int i = 1; i < k; ++i)
      if (ctx.phi.coeffs[static_cast<std::size_t>(i)] != ctx.phi.coeffs[0])
        throw ContractViolation("rotation: phi is not radial in the normal variables");
  }

  JetElement rotated = fx;
  rotated.coeffs = compose_linear(fx.coeffs, unitary);

  RotationReport rep;
  rep.original = metric_closed_form(fx, fx, ctx);
  rep.rotated = metric_closed_form(rotated, rotated, ctx);
  rep.gap = std::abs(rep.rotated - rep.original);

  if (with_monte_carlo) {
    const int p = fx.jet_order();
    const double pref = 0.5 * phase_prefactor(ctx, fx, p) * ctx.slice_at(fx.base_point).density;
    auto density = [&](const CoeffMap& coeffs) {
      return [coeffs](std::span<const Complex> u) -> Complex {
        const Complex v = eval_poly(coeffs, u);
        return v * std::conj(v);
      };
    };
    const Integral mo = sphere_integral_mc(k, density(fx.coeffs), cfg);
    const Integral mr = sphere_integral_mc(k, density(rotated.coeffs), cfg);
    rep.mc_original = pref * mo.value;
    rep.mc_rotated = pref * mr.value;
    rep.mc_gap = std::abs(rep.mc_rotated - rep.mc_original);
    rep.mc_stderr = pref * (mo.error + mr.error);
  }
  return rep;
}

FubiniReport verify_fubini(const JetSection& g, const ScalarField& extension,
                           const ModelContext& ctx, const QuadratureConfig& cfg,
                           std::span<const double> t_schedule) {
  g.validate();
  check_schedule(t_schedule);
  const int p = g.p;
  const int gcoeff = p + g.k - 1;
  ScalarField density = [&, gcoeff](std::span<const Complex> z) -> Complex {
    double s = 0.0;
    for (int i = 0; i < g.k; ++i) s += std::norm(z[static_cast<std::size_t>(i)]);
    const double G = std::log(s) + ctx.green.gamma.value(z);
    const Complex v = extension(z);
    return v * std::conj(v) * std::exp(-ctx.phi.value(z) - gcoeff * G);
  };

  FubiniReport rep;
  rep.lhs = section_norm_sq(g, ctx, cfg);
  for (double t : t_schedule)
    rep.rhs.emplace_back(t, integrate_domain_shell(ctx, ShellSpec{t}, density, cfg).value);
  rep.final_gap = std::abs(rep.rhs.back().second - rep.lhs);
  return rep;
}

FubiniReport verify_fubini(const JetSection& g, const ModelContext& ctx,
                           const QuadratureConfig& cfg, std::span<const double> t_schedule) {
  const CoeffMap ext = canonical_extension(g);
  return verify_fubini(
      g, [ext](std::span<const Complex> z) { return eval_poly(ext, z); }, ctx, cfg, t_schedule);
}

}  // namespace bjet
