// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bjet/extension.hpp"
#include "bjet/lemma_lab.hpp"
#include "oracles.hpp"

using namespace bjet;

namespace {

const double kPi = oracle::kPi;
int g_failures = 0;

void report(int id, bool pass, const char* what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, what,
              detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

ModelContext disc_context(PhiSpec phi = {}, GammaSpec gamma = {}) {
  ModelContext ctx;
  ctx.domain = DomainSpec::unit_disc();
  ctx.sub = {1};
  ctx.green = {1, gamma};
  ctx.phi = phi;
  return ctx;
}

ModelContext polydisc_context(PhiSpec phi = {}, GammaSpec gamma = {}) {
  ModelContext ctx;
  ctx.domain = DomainSpec::polydisc({1.0, 1.0});
  ctx.sub = {1};
  ctx.green = {1, gamma};
  ctx.phi = phi;
  return ctx;
}

JetSection monomial_section(int n, int k, int p) {
  JetSection s;
  s.n = n;
  s.k = k;
  s.p = p;
  std::vector<int> normal(static_cast<std::size_t>(k), 0);
  normal[0] = p - 1;
  s.components[MultiIndex(normal)] =
      CoeffMap{{MultiIndex(std::vector<int>(static_cast<std::size_t>(n - k), 0)),
                Complex{1.0, 0.0}}};
  return s;
}

struct BatteryConfig {
  ModelContext ctx;
  int p;
  std::string label;
};

// Criterion 2's twelve configurations: disc and bidisc, phi in
// {0, |z|^2/4, |z|^2/2}, gamma in {0, -0.1}, p in {2, 3}.
std::vector<BatteryConfig> battery() {
  PhiSpec phi0;
  PhiSpec phi4;
  phi4.kind = PhiSpec::Kind::ScaledSqnorm;
  phi4.c = 0.25;
  PhiSpec phi2;
  phi2.kind = PhiSpec::Kind::ScaledSqnorm;
  phi2.c = 0.5;
  GammaSpec g0;
  GammaSpec gm;
  gm.kind = GammaSpec::Kind::Constant;
  gm.c = -0.1;

  std::vector<BatteryConfig> out;
  const auto add = [&](bool disc, PhiSpec phi, GammaSpec gamma, int p, const char* tag) {
    if (disc)
      out.push_back({disc_context(phi, gamma), p, std::string("disc/") + tag});
    else
      out.push_back({polydisc_context(phi, gamma), p, std::string("bidisc/") + tag});
  };
  for (bool disc : {true, false}) {
    add(disc, phi0, g0, 2, "phi0/g0/p2");
    add(disc, phi0, g0, 3, "phi0/g0/p3");
    add(disc, phi4, g0, 2, "phi4/g0/p2");
    add(disc, phi2, g0, 3, "phi2/g0/p3");
    add(disc, phi4, gm, 2, "phi4/gm/p2");
    add(disc, phi0, gm, 3, "phi0/gm/p3");
  }
  return out;
}

ExtensionProblem make_problem(const BatteryConfig& bc) {
  ExtensionProblem prob;
  prob.ctx = bc.ctx;
  prob.jet = monomial_section(bc.ctx.domain.n, bc.ctx.sub.k, bc.p);
  prob.trunc = BasisTruncation::make(bc.ctx.domain.n, bc.ctx.sub.k, bc.p);
  return prob;
}

// --- criteria -------------------------------------------------------------

void criterion_1_disc_optimality(const QuadratureConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int p : {2, 3, 4, 5}) {
    ExtensionProblem prob;
    prob.ctx = disc_context();
    prob.jet = monomial_section(1, 1, p);
    prob.trunc = BasisTruncation::make(1, 1, p);
    const BoundReport rep = verify_optimal_bound(prob, cfg);
    const bool ok = oracle::rel_err(rep.jet_norm_sq, kPi) < 1e-6 &&
                    oracle::rel_err(rep.primal_norm_sq, kPi) < 1e-6 &&
                    std::abs(rep.ratio - 1.0) < 1e-6;
    pass = pass && ok;
    detail += "p=" + std::to_string(p) + " ratio=" + sci(rep.ratio) + " ";
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 5.0;
  report(1, pass, "disc optimality: jet norm = primal = pi, ratio = 1 (1e-6)",
         detail + "in " + sci(dt) + "s");
}

void criterion_2_inequality_battery(const QuadratureConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  double worst = 0.0;
  std::string worst_label;
  for (const BatteryConfig& bc : battery()) {
    const BoundReport rep = verify_optimal_bound(make_problem(bc), cfg);
    if (rep.ratio > worst) {
      worst = rep.ratio;
      worst_label = bc.label;
    }
    pass = pass && rep.ratio <= 1.0 + 5e-3;
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 120.0;
  report(2, pass, "extension bound on the 12-configuration battery (ratio <= 1+5e-3)",
         "worst ratio " + sci(worst) + " at " + worst_label + ", " +
             sci(dt) + "s");
}

void criterion_3_shell_vs_closed(const QuadratureConfig& cfg) {
  bool pass = true;
  double worst_rel = 0.0, worst_tail = 0.0;
  const double ts[] = {-20.0, -25.0, -30.0};
  for (const BatteryConfig& bc : battery()) {
    const JetSection jet = monomial_section(bc.ctx.domain.n, bc.ctx.sub.k, bc.p);
    const PointCn origin(static_cast<std::size_t>(bc.ctx.domain.n - bc.ctx.sub.k),
                         Complex{0, 0});
    const JetElement e = jet.at(origin);
    const MetricValue mv = metric_shell(e, e, bc.ctx, cfg, ts, 1e-4);
    const double closed = std::abs(mv.closed_form);
    const double rel = std::abs(mv.extrapolated - mv.closed_form) / closed;
    worst_rel = std::max(worst_rel, rel);
    pass = pass && rel <= 1e-4;
    // monotone convergence of the shell estimates within 1e-5
    const double d1 =
        std::abs(mv.shell_estimates[1].second - mv.shell_estimates[0].second);
    const double d2 =
        std::abs(mv.shell_estimates[2].second - mv.shell_estimates[1].second);
    worst_tail = std::max(worst_tail, d2 / closed);
    pass = pass && d2 <= d1 + 1e-5 * closed && d2 <= 1e-5 * closed;
  }
  report(3, pass, "shell limit vs closed form (1e-4) with monotone convergence (1e-5)",
         "worst relative gap " + sci(worst_rel) + ", worst tail " +
             sci(worst_tail));
}

void criterion_4_dual_norm_closed_form(const QuadratureConfig& cfg) {
  const auto ctx = disc_context();
  const auto trunc = BasisTruncation::make(1, 1, 2);
  const auto xi = functional_moments(monomial_section(1, 1, 2), trunc, ctx, cfg);
  bool pass = true;
  double worst = 0.0;
  for (double q : {2.0, 3.0, 5.0}) {
    for (double s : {0.0, -1.0, -5.0, -20.0}) {
      const GramMatrix gm = gram(trunc, ctx, {s, q, 2}, cfg);
      const double es = std::exp(s) * dual_norm(xi, gm);
      const double closed = oracle::disc_dual_es_closed(s, q);
      const double rel = oracle::rel_err(es, closed);
      worst = std::max(worst, rel);
      pass = pass && rel <= 1e-6;
    }
  }
  report(4, pass, "disc dual norm: e^s ||xi||^2 = pi(q-1)/(q-e^{(q-1)s}) (1e-6)",
         "worst relative error " + sci(worst));
}

void criterion_5_sweep_properties(const QuadratureConfig& cfg) {
  const auto ctx = disc_context();
  const auto trunc = BasisTruncation::make(1, 1, 2);
  const auto xi = functional_moments(monomial_section(1, 1, 2), trunc, ctx, cfg);
  std::vector<double> grid;
  for (double s = -20.0; s <= 0.0 + 1e-12; s += 0.5) grid.push_back(s);
  bool pass = true;
  std::string detail;
  for (double q : {2.0, 3.0, 5.0}) {
    const auto rows = dual_norm_sweep(xi, ctx, grid, q, cfg);
    SweepTable table;
    table.q = q;
    for (const auto& r : rows) table.rows.emplace_back(r.s, r.norm_sq);
    const CheckReport convex = check_log_convexity(table, 1e-5);
    const CheckReport mono = check_increasing_es(table, 1e-5);
    pass = pass && convex.status == CheckReport::Status::Pass &&
           mono.status == CheckReport::Status::Pass;
    detail += "q=" + std::to_string(static_cast<int>(q)) + " margins " +
              sci(convex.margin) + "/" + sci(mono.margin) + " ";
  }
  report(5, pass, "log-convexity and e^s-monotonicity of the sweep (tol 1e-5)", detail);
}

void criterion_6_limit_deficit(const QuadratureConfig& cfg) {
  const auto ctx = disc_context();
  const auto trunc = BasisTruncation::make(1, 1, 2);
  const auto xi = functional_moments(monomial_section(1, 1, 2), trunc, ctx, cfg);
  const double q = 50.0;
  const double grid[] = {-20.0};
  const auto rows = dual_norm_sweep(xi, ctx, grid, q, cfg);
  const double limit_est = rows.front().es_norm_sq;
  const double jet_norm = kPi;  // ||class(z)||^2 on the disc
  const double delta = 1.0 - limit_est / jet_norm;
  const bool pass = limit_est >= jet_norm * (1.0 - 1.0 / q) - 1e-4 &&
                    std::abs(delta - 1.0 / q) <= 1e-4;
  report(6, pass, "limit lower bound at q = 50: deficit delta(q) = 1/q (1e-4)",
         "delta = " + sci(delta));
}

void criterion_7_kernel(const QuadratureConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  OneDFunction f;
  f.kind = OneDFunction::Kind::Exponential;
  bool pass = true;
  std::string detail;
  for (double q : {2.0, 3.0}) {
    const double grid[] = {-20.0};
    const CheckReport rep = check_kernel_limit(f, 1.0, q, grid, cfg, 1e-3);
    // |H(-20) - C/(q-1)| <= 1e-3 via the reported relative margin
    const double bound = 1.0 / (q - 1.0);
    const double h = bound * (1.0 + rep.margin);
    pass = pass && rep.status == CheckReport::Status::Pass &&
           std::abs(h - bound) <= 1e-3;
    detail += "q=" + std::to_string(static_cast<int>(q)) + " H=" + sci(h) + " ";
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 1.0;
  report(7, pass, "kernel limit H(-20) vs C/(q-1) for q in {2,3} (1e-3)",
         detail + sci(dt) + "s");
}

void criterion_8_averaging_and_compare(const QuadratureConfig& cfg) {
  bool pass = true;
  // averaging battery: constants and powers of t
  const double sg[] = {0.01, 0.05, 0.1};
  const double ug[] = {0.01, 0.05, 0.1};
  for (const std::vector<double>& coeffs :
       {std::vector<double>{2.5}, std::vector<double>{0.0, 1.0},
        std::vector<double>{0.0, 0.0, 1.0}}) {
    OneDFunction p;
    p.kind = OneDFunction::Kind::Polynomial;
    p.coeffs = coeffs;
    pass = pass &&
           check_averaging_inequality(p, ug, sg, cfg).status == CheckReport::Status::Pass;
  }
  // comparison battery: monomials on the disc, plus a constant gamma
  const double ts[] = {-12.0, -16.0, -20.0};
  double c_base = 0.0;
  {
    const auto rep =
        check_compare_lemma(MultiIndex({1}), disc_context(), 2, -4.0, ts, cfg, 1.000001);
    c_base = rep.smallest_c;
    pass = pass && rep.check.status == CheckReport::Status::Pass &&
           std::abs(rep.smallest_c - 1.0) <= 1e-6 &&
           oracle::rel_err(rep.shell_limsup, kPi) <= 1e-8 &&
           oracle::rel_err(rep.rhs_value, kPi) <= 1e-8;
  }
  {
    const auto rep =
        check_compare_lemma(MultiIndex({2}), disc_context(), 2, -4.0, ts, cfg, 5e-3);
    pass = pass && rep.check.status == CheckReport::Status::Pass &&
           rep.shell_limsup <= 1e-4;  // extra normal order decays like e^t
  }
  {
    GammaSpec gm;
    gm.kind = GammaSpec::Kind::Constant;
    gm.c = -0.1;
    const double bound = std::exp(2 * 0.1) * std::exp(1 * 0.1) + 1e-6;
    const auto rep = check_compare_lemma(MultiIndex({1}), disc_context({}, gm), 2, -4.0,
                                         ts, cfg, bound);
    pass = pass && rep.check.status == CheckReport::Status::Pass;
  }
  report(8, pass, "averaging and comparison batteries at their analytic values",
         "compare C = " + sci(c_base));
}

void criterion_9_invariance_suite(const QuadratureConfig& cfg) {
  bool pass = true;
  std::string detail;
  // perturbation invariance at t = -20
  {
    const auto ctx = disc_context();
    JetElement e;
    e.k = 1;
    e.coeffs[MultiIndex({1})] = Complex{1.0, 0.0};
    const CoeffMap rem{{MultiIndex({2}), Complex{1.0, 0.0}}};
    const double ts[] = {-20.0};
    const GapReport rep = verify_perturbation_invariance(e, rem, ctx, cfg, ts);
    pass = pass && rep.final_gap <= 1e-6;
    detail += "perturbation " + sci(rep.final_gap) + "; ";
  }
  // rotation invariance of the k = 2 metric, Monte Carlo at 10^6 samples
  {
    ModelContext ctx;
    ctx.domain = DomainSpec::unit_ball(2);
    ctx.sub = {2};
    ctx.green = {2, {}};
    JetElement e;
    e.k = 2;
    e.coeffs[MultiIndex({1, 0})] = Complex{1.0, 0.0};
    MatrixXc u(2, 2);
    const double th = 0.61547970867038734;
    u << Complex{std::cos(th), 0}, Complex{-std::sin(th), 0},
        Complex{std::sin(th), 0}, Complex{std::cos(th), 0};
    QuadratureConfig mc_cfg = cfg;
    mc_cfg.mc_samples = 1000000;
    const RotationReport rep = verify_rotation_invariance(e, u, ctx, mc_cfg, true);
    const double scale = std::abs(rep.original);
    pass = pass && rep.gap <= 1e-10 * scale && rep.mc_gap <= 1e-4 * scale;
    detail += "rotation mc " + sci(rep.mc_gap / scale) + "; ";
  }
  // Fubini identity on the bidisc
  {
    const auto ctx = polydisc_context();
    const JetSection g = monomial_section(2, 1, 2);
    const double ts[] = {-15.0, -20.0};
    const FubiniReport rep = verify_fubini(g, ctx, cfg, ts);
    pass = pass && rep.final_gap <= 1e-3 * rep.lhs;
    detail += "fubini " + sci(rep.final_gap / rep.lhs);
  }
  report(9, pass,
         "invariance suite: perturbation 1e-6, rotation 1e-4 (MC), Fubini 1e-3", detail);
}

void criterion_10_primal_dual(const QuadratureConfig& cfg) {
  bool pass = true;
  double worst = 0.0;
  // radial configurations: disc p in {2, 3} and bidisc p = 2 with phi variants
  std::vector<BatteryConfig> configs;
  PhiSpec phi4;
  phi4.kind = PhiSpec::Kind::ScaledSqnorm;
  phi4.c = 0.25;
  configs.push_back({disc_context(), 2, "disc/p2"});
  configs.push_back({disc_context(phi4), 2, "disc/phi4"});
  configs.push_back({disc_context(), 3, "disc/p3"});
  configs.push_back({polydisc_context(), 2, "bidisc/p2"});
  configs.push_back({polydisc_context(phi4), 2, "bidisc/phi4"});
  for (const BatteryConfig& bc : configs) {
    const ExtensionProblem prob = make_problem(bc);
    const double primal = minimal_extension(prob, cfg).primal_norm_sq;
    const JetSection probes[] = {prob.jet};
    const double dual = quotient_norm_dual(prob, probes, cfg);
    const double gap = std::abs(primal - dual) / primal;
    worst = std::max(worst, gap);
    pass = pass && std::abs(primal - dual) <= 1e-8 * primal;
  }
  report(10, pass, "primal-dual equality on radial configurations (1e-8)",
         "worst relative gap " + sci(worst));
}

}  // namespace

int main() {
  QuadratureConfig cfg;
  cfg.seed = 20260810;

  criterion_1_disc_optimality(cfg);
  criterion_2_inequality_battery(cfg);
  criterion_3_shell_vs_closed(cfg);
  criterion_4_dual_norm_closed_form(cfg);
  criterion_5_sweep_properties(cfg);
  criterion_6_limit_deficit(cfg);
  criterion_7_kernel(cfg);
  criterion_8_averaging_and_compare(cfg);
  criterion_9_invariance_suite(cfg);
  criterion_10_primal_dual(cfg);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria PASS\n");
  return 0;
}
