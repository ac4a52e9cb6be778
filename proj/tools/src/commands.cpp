#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bjet/extension.hpp"
#include "bjet/serialize.hpp"

namespace bjet::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& out_dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
  out << content;
}

void write_json(const std::string& out_dir, const std::string& name, const OrderedJson& j) {
  write_file(out_dir, name, j.dump(2) + "\n");
}

const char* status_cell(CheckReport::Status s) {
  switch (s) {
    case CheckReport::Status::Pass:
      return "PASS";
    case CheckReport::Status::Fail:
      return "FAIL";
    case CheckReport::Status::ContractViolation:
      return "CONTRACT-VIOLATION";
  }
  return "?";
}

}  // namespace

int cmd_metric(const RunConfig& cfg, const std::string& out_dir) {
  const JetElement e = cfg.jet.at(cfg.base_point);
  const MetricValue mv =
      metric_shell(e, e, cfg.ctx, cfg.quad, cfg.t_schedule, cfg.agreement_tol);
  write_json(out_dir, "metric.json", to_json(mv));
  std::cout << "metric: extrapolated = " << format_double(mv.extrapolated.real())
            << ", closed form = " << format_double(mv.closed_form.real())
            << ", agreement = " << (mv.agreement ? "PASS" : "FAIL") << "\n";
  return mv.agreement ? kExitPass : kExitCheckFailure;
}

int cmd_extend(const RunConfig& cfg, const std::string& out_dir) {
  ExtensionProblem prob{cfg.jet, cfg.ctx, cfg.trunc};
  const BoundReport rep = verify_optimal_bound(prob, cfg.quad, cfg.bound_tol);
  OrderedJson j = to_json(rep);
  if (!cfg.jet.is_zero()) {
    const ExtensionResult res = minimal_extension(prob, cfg.quad);
    j["extension"] = to_json(res);
  }
  write_json(out_dir, "extend.json", j);
  std::cout << "extend: primal = " << format_double(rep.primal_norm_sq)
            << ", jet norm = " << format_double(rep.jet_norm_sq)
            << ", ratio = " << format_double(rep.ratio)
            << ", verdict = " << (rep.satisfied ? "PASS" : "FAIL") << "\n";
  return rep.satisfied ? kExitPass : kExitCheckFailure;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  const DualFunctional xi = functional_moments(cfg.jet, cfg.trunc, cfg.ctx, cfg.quad);
  const double jet_norm = section_norm_sq(cfg.jet, cfg.ctx, cfg.quad);

  CsvWriter csv("s,q,norm,es_norm");
  CsvWriter board("check,q,status,margin,witness");
  bool all_pass = true;

  const double q_max = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
  for (double q : cfg.q_grid) {
    const auto rows = dual_norm_sweep(xi, cfg.ctx, cfg.s_grid, q, cfg.quad);
    for (const SweepRow& r : rows) {
      const std::string cells[] = {format_double(r.s), format_double(q),
                                   format_double(r.norm_sq), format_double(r.es_norm_sq)};
      csv.add_row(cells);
    }

    SweepTable table;
    table.q = q;
    for (const SweepRow& r : rows) table.rows.emplace_back(r.s, r.norm_sq);

    const CheckReport convex = check_log_convexity(table, cfg.sweep_check_tol);
    const CheckReport increasing = check_increasing_es(table, cfg.sweep_check_tol);
    for (const CheckReport* rep : {&convex, &increasing}) {
      const std::string cells[] = {rep->name, format_double(q), status_cell(rep->status),
                                   format_double(rep->margin), format_double(rep->witness)};
      board.add_row(cells);
      all_pass = all_pass && rep->status == CheckReport::Status::Pass;
    }

    if (q == q_max && q > 1.0) {
      // limit lower bound: grid-floor estimate of e^s ||xi||^2 against the
      // jet norm with deficit delta(q); the disc closed form gives 1/q
      const double limit_est = rows.front().es_norm_sq;
      const double delta_reported = 1.0 - limit_est / jet_norm;
      const bool ok = limit_est >= jet_norm * (1.0 - 1.0 / q) - cfg.limit_tol;
      const std::string cells[] = {"limit_lower_bound", format_double(q),
                                   ok ? "PASS" : "FAIL", format_double(delta_reported),
                                   format_double(rows.front().s)};
      board.add_row(cells);
      all_pass = all_pass && ok;
      std::cout << "sweep: q = " << q << ", delta(q) = " << format_double(delta_reported)
                << " (closed form 1/q = " << format_double(1.0 / q) << ")\n";
    }
  }

  write_file(out_dir, "sweep.csv", csv.str());
  write_file(out_dir, "sweep_scoreboard.csv", board.str());
  std::cout << "sweep: " << (all_pass ? "all checks PASS" : "checks FAILED") << "\n";
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_lemmas(const RunConfig& cfg, const std::string& out_dir) {
  if (cfg.checks.empty())
    throw ConfigError("lemmas: empty battery; declare lemmas.checks in the config");

  CsvWriter board("check,label,status,margin,witness,detail");
  bool all_pass = true;
  OrderedJson reports = OrderedJson::array();

  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    const LemmaCheckSpec& spec = cfg.checks[i];
    CheckReport rep;
    switch (spec.type) {
      case LemmaCheckSpec::Type::KernelLimit:
        rep = check_kernel_limit(spec.f, spec.c, spec.q, spec.s_grid, cfg.quad, spec.tol);
        break;
      case LemmaCheckSpec::Type::Averaging:
        rep = check_averaging_inequality(spec.p_fn, spec.u_grid, spec.s_grid, cfg.quad,
                                         spec.tol);
        break;
      case LemmaCheckSpec::Type::Compare: {
        const CompareReport cr =
            check_compare_lemma(MultiIndex(spec.monomial), cfg.ctx, spec.p, spec.s,
                                spec.t_schedule, cfg.quad, spec.c_bound);
        rep = cr.check;
        break;
      }
    }
    const std::string label = spec.label.empty() ? ("#" + std::to_string(i)) : spec.label;
    const std::string cells[] = {rep.name,                   label,
                                 status_cell(rep.status),    format_double(rep.margin),
                                 format_double(rep.witness), rep.detail};
    board.add_row(cells);
    OrderedJson jr = to_json(rep);
    jr["label"] = label;
    reports.push_back(jr);
    all_pass = all_pass && rep.status == CheckReport::Status::Pass;
  }

  write_file(out_dir, "lemmas_scoreboard.csv", board.str());
  write_json(out_dir, "lemmas.json",
             OrderedJson{{"schema", kSchemaTag}, {"reports", reports}});
  std::cout << "lemmas: " << (all_pass ? "all checks PASS" : "checks FAILED") << "\n";
  return all_pass ? kExitPass : kExitCheckFailure;
}

}  // namespace bjet::cli
