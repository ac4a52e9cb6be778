#include "config.hpp"

#include <fstream>
#include <set>

namespace bjet::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

const Json& need(const Json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where, "missing required field '" + key + "'");
  return *it;
}

void check_keys(const Json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(where, "unknown field '" + key + "'");
}

double need_number(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number()) fail(where, "'" + key + "' must be a number");
  return v.get<double>();
}

int need_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer()) fail(where, "'" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(where, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// A grid is either an explicit array or {"from", "to", "step"}.
std::vector<double> parse_grid(const Json& v, const std::string& where) {
  if (v.is_array()) return number_list(v, where);
  if (v.is_object()) {
    check_keys(v, where, {"from", "to", "step"});
    const double from = need_number(v, "from", where);
    const double to = need_number(v, "to", where);
    const double step = need_number(v, "step", where);
    if (!(step > 0)) fail(where, "grid step must be positive");
    std::vector<double> out;
    for (double x = from; x <= to + 1e-12; x += step) out.push_back(x);
    if (out.empty()) fail(where, "empty grid");
    return out;
  }
  fail(where, "expected an array or a from/to/step object");
}

DomainSpec parse_domain(const Json& j) {
  const std::string where = "geometry.domain";
  const Json& kind = need(j, "kind", where);
  if (kind == "disc") {
    check_keys(j, where, {"kind"});
    return DomainSpec::unit_disc();
  }
  if (kind == "ball") {
    check_keys(j, where, {"kind", "n"});
    return DomainSpec::unit_ball(need_int(j, "n", where));
  }
  if (kind == "polydisc") {
    check_keys(j, where, {"kind", "radii"});
    return DomainSpec::polydisc(number_list(need(j, "radii", where), where));
  }
  if (kind == "box") {
    check_keys(j, where, {"kind", "rects"});
    const Json& rects = need(j, "rects", where);
    if (!rects.is_array()) fail(where, "'rects' must be an array");
    std::vector<Rect> rs;
    for (const auto& r : rects) {
      const auto vals = number_list(r, where + ".rects");
      if (vals.size() != 4) fail(where, "each rect is [re_min, re_max, im_min, im_max]");
      rs.push_back(Rect{vals[0], vals[1], vals[2], vals[3]});
    }
    return DomainSpec::box(std::move(rs));
  }
  fail(where, "unknown domain kind '" + kind.get<std::string>() + "'");
}

GammaSpec parse_gamma(const Json& j) {
  const std::string where = "weights.gamma";
  GammaSpec g;
  const Json& kind = need(j, "kind", where);
  if (kind == "zero") {
    check_keys(j, where, {"kind"});
    g.kind = GammaSpec::Kind::Zero;
  } else if (kind == "constant") {
    check_keys(j, where, {"kind", "c"});
    g.kind = GammaSpec::Kind::Constant;
    g.c = need_number(j, "c", where);
  } else if (kind == "scaled_norm") {
    check_keys(j, where, {"kind", "eps"});
    g.kind = GammaSpec::Kind::ScaledNorm;
    g.eps = need_number(j, "eps", where);
  } else if (kind == "radial_bump") {
    check_keys(j, where, {"kind", "a", "w"});
    g.kind = GammaSpec::Kind::RadialBump;
    g.a = need_number(j, "a", where);
    g.w = need_number(j, "w", where);
  } else {
    fail(where, "unknown gamma kind");
  }
  return g;
}

PhiSpec parse_phi(const Json& j) {
  const std::string where = "weights.phi";
  PhiSpec p;
  const Json& kind = need(j, "kind", where);
  if (kind == "zero") {
    check_keys(j, where, {"kind"});
    p.kind = PhiSpec::Kind::Zero;
  } else if (kind == "scaled_sqnorm") {
    check_keys(j, where, {"kind", "c"});
    p.kind = PhiSpec::Kind::ScaledSqnorm;
    p.c = need_number(j, "c", where);
  } else if (kind == "weighted_sqnorm") {
    check_keys(j, where, {"kind", "coeffs"});
    p.kind = PhiSpec::Kind::WeightedSqnorm;
    p.coeffs = number_list(need(j, "coeffs", where), where);
  } else if (kind == "max_affine_log") {
    check_keys(j, where, {"kind", "terms"});
    p.kind = PhiSpec::Kind::MaxAffineLog;
    const Json& terms = need(j, "terms", where);
    if (!terms.is_array()) fail(where, "'terms' must be an array");
    for (const auto& t : terms) {
      check_keys(t, where + ".terms", {"a", "b", "eps"});
      p.terms.push_back({need_number(t, "a", where), need_number(t, "b", where),
                         need_number(t, "eps", where)});
    }
  } else {
    fail(where, "unknown phi kind");
  }
  return p;
}

MultiIndex parse_index(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "multi-index must be an array of integers");
  std::vector<int> e;
  for (const auto& x : v) {
    if (!x.is_number_integer()) fail(where, "multi-index must be an array of integers");
    e.push_back(x.get<int>());
  }
  return MultiIndex(e);
}

JetSection parse_jet(const Json& j, int n, int k, int p) {
  const std::string where = "jet";
  check_keys(j, where, {"components"});
  JetSection s;
  s.n = n;
  s.k = k;
  s.p = p;
  const Json& comps = need(j, "components", where);
  if (!comps.is_array()) fail(where, "'components' must be an array");
  for (const auto& comp : comps) {
    check_keys(comp, where + ".components", {"normal", "poly"});
    const MultiIndex normal = parse_index(need(comp, "normal", where), where);
    CoeffMap poly;
    const Json& terms = need(comp, "poly", where);
    if (!terms.is_array()) fail(where, "'poly' must be an array");
    for (const auto& t : terms) {
      check_keys(t, where + ".poly", {"powers", "re", "im"});
      const MultiIndex powers = parse_index(need(t, "powers", where), where);
      poly[powers] += Complex(need_number(t, "re", where), need_number(t, "im", where));
    }
    s.components[normal] = std::move(poly);
  }
  try {
    s.validate();
  } catch (const ContractViolation& e) {
    fail(where, e.what());
  }
  return s;
}

OneDFunction parse_onedf(const Json& j, const std::string& where) {
  OneDFunction f;
  const Json& kind = need(j, "kind", where);
  if (kind == "exponential") {
    check_keys(j, where, {"kind", "a", "b"});
    f.kind = OneDFunction::Kind::Exponential;
    f.a = need_number(j, "a", where);
    f.b = need_number(j, "b", where);
  } else if (kind == "polynomial") {
    check_keys(j, where, {"kind", "coeffs"});
    f.kind = OneDFunction::Kind::Polynomial;
    f.coeffs = number_list(need(j, "coeffs", where), where);
  } else if (kind == "tabulated") {
    check_keys(j, where, {"kind", "ts", "vals"});
    f.kind = OneDFunction::Kind::Tabulated;
    f.ts = number_list(need(j, "ts", where), where);
    f.vals = number_list(need(j, "vals", where), where);
    if (f.ts.size() != f.vals.size()) fail(where, "ts and vals must have equal length");
  } else {
    fail(where, "unknown function kind");
  }
  return f;
}

LemmaCheckSpec parse_check(const Json& j, std::size_t pos) {
  const std::string where = "lemmas.checks[" + std::to_string(pos) + "]";
  LemmaCheckSpec spec;
  const Json& type = need(j, "type", where);
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  if (type == "kernel_limit") {
    check_keys(j, where, {"type", "label", "F", "C", "q", "s_grid", "tol"});
    spec.type = LemmaCheckSpec::Type::KernelLimit;
    spec.f = parse_onedf(need(j, "F", where), where + ".F");
    spec.c = need_number(j, "C", where);
    spec.q = need_number(j, "q", where);
    spec.s_grid = parse_grid(need(j, "s_grid", where), where);
    if (j.contains("tol")) spec.tol = need_number(j, "tol", where);
  } else if (type == "averaging") {
    check_keys(j, where, {"type", "label", "P", "u_grid", "s_grid", "tol"});
    spec.type = LemmaCheckSpec::Type::Averaging;
    spec.p_fn = parse_onedf(need(j, "P", where), where + ".P");
    spec.u_grid = parse_grid(need(j, "u_grid", where), where);
    spec.s_grid = parse_grid(need(j, "s_grid", where), where);
    spec.tol = j.contains("tol") ? need_number(j, "tol", where) : 1e-9;
  } else if (type == "compare") {
    check_keys(j, where, {"type", "label", "monomial", "p", "s", "t_schedule", "c_bound"});
    spec.type = LemmaCheckSpec::Type::Compare;
    const MultiIndex m = parse_index(need(j, "monomial", where), where);
    spec.monomial = m.exponents();
    spec.p = need_int(j, "p", where);
    spec.s = need_number(j, "s", where);
    spec.t_schedule = parse_grid(need(j, "t_schedule", where), where);
    std::sort(spec.t_schedule.begin(), spec.t_schedule.end(), std::greater<double>());
    spec.c_bound = need_number(j, "c_bound", where);
  } else {
    fail(where, "unknown check type");
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  check_keys(j, "(root)",
             {"geometry", "weights", "jet", "truncation", "quadrature", "metric", "extend",
              "sweep", "lemmas"});
  RunConfig cfg;

  const Json& geom = need(j, "geometry", "(root)");
  check_keys(geom, "geometry", {"domain", "codim"});
  cfg.ctx.domain = parse_domain(need(geom, "domain", "geometry"));
  cfg.ctx.sub.k = need_int(geom, "codim", "geometry");

  const Json& weights = need(j, "weights", "(root)");
  check_keys(weights, "weights", {"phi", "gamma", "p"});
  cfg.ctx.green.k = cfg.ctx.sub.k;
  cfg.ctx.green.gamma = parse_gamma(need(weights, "gamma", "weights"));
  cfg.ctx.phi = parse_phi(need(weights, "phi", "weights"));
  cfg.p = need_int(weights, "p", "weights");
  if (cfg.p < 2) fail("weights", "p must be >= 2");

  try {
    cfg.ctx.validate();
  } catch (const ConfigError&) {
    throw;
  }

  int max_degree = cfg.p + 6;
  if (j.contains("truncation")) {
    const Json& t = j.at("truncation");
    check_keys(t, "truncation", {"max_degree"});
    max_degree = need_int(t, "max_degree", "truncation");
  }
  cfg.trunc = BasisTruncation::make(cfg.ctx.domain.n, cfg.ctx.sub.k, cfg.p, max_degree);

  cfg.jet = parse_jet(need(j, "jet", "(root)"), cfg.ctx.domain.n, cfg.ctx.sub.k, cfg.p);

  const Json& quad = need(j, "quadrature", "(root)");
  check_keys(quad, "quadrature",
             {"radial_order", "angular_order", "tangential_order", "panel_count",
              "mc_samples", "seed"});
  if (quad.contains("radial_order")) cfg.quad.radial_order = need_int(quad, "radial_order", "quadrature");
  if (quad.contains("angular_order"))
    cfg.quad.angular_order = need_int(quad, "angular_order", "quadrature");
  if (quad.contains("tangential_order"))
    cfg.quad.tangential_order = need_int(quad, "tangential_order", "quadrature");
  if (quad.contains("panel_count")) cfg.quad.panel_count = need_int(quad, "panel_count", "quadrature");
  if (quad.contains("mc_samples"))
    cfg.quad.mc_samples = need(quad, "mc_samples", "quadrature").get<std::int64_t>();
  cfg.quad.seed = static_cast<std::uint64_t>(need_int(quad, "seed", "quadrature"));
  try {
    cfg.quad.validate();
  } catch (const ConfigError&) {
    throw;
  }

  if (j.contains("metric")) {
    const Json& m = j.at("metric");
    check_keys(m, "metric", {"t_schedule", "base_point", "agreement_tol"});
    if (m.contains("t_schedule")) {
      cfg.t_schedule = number_list(m.at("t_schedule"), "metric.t_schedule");
      std::sort(cfg.t_schedule.begin(), cfg.t_schedule.end(), std::greater<double>());
    }
    if (m.contains("agreement_tol")) cfg.agreement_tol = need_number(m, "agreement_tol", "metric");
    if (m.contains("base_point")) {
      for (const auto& c : m.at("base_point")) {
        const auto vals = number_list(c, "metric.base_point");
        if (vals.size() != 2) fail("metric.base_point", "each entry is [re, im]");
        cfg.base_point.emplace_back(vals[0], vals[1]);
      }
    }
  }
  if (cfg.base_point.empty())
    cfg.base_point.assign(static_cast<std::size_t>(cfg.ctx.domain.n - cfg.ctx.sub.k),
                          Complex{0.0, 0.0});

  if (j.contains("extend")) {
    const Json& e = j.at("extend");
    check_keys(e, "extend", {"tol"});
    if (e.contains("tol")) cfg.bound_tol = need_number(e, "tol", "extend");
  }

  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    check_keys(s, "sweep", {"q_grid", "s_grid", "check_tol", "limit_tol"});
    if (s.contains("q_grid")) cfg.q_grid = number_list(s.at("q_grid"), "sweep.q_grid");
    if (s.contains("s_grid")) cfg.s_grid = parse_grid(s.at("s_grid"), "sweep.s_grid");
    if (s.contains("check_tol")) cfg.sweep_check_tol = need_number(s, "check_tol", "sweep");
    if (s.contains("limit_tol")) cfg.limit_tol = need_number(s, "limit_tol", "sweep");
  }
  if (cfg.s_grid.empty())
    for (double x = -20.0; x <= 0.0 + 1e-12; x += 0.5) cfg.s_grid.push_back(x);

  if (j.contains("lemmas")) {
    const Json& l = j.at("lemmas");
    check_keys(l, "lemmas", {"checks"});
    const Json& checks = need(l, "checks", "lemmas");
    if (!checks.is_array()) fail("lemmas.checks", "must be an array");
    for (std::size_t i = 0; i < checks.size(); ++i)
      cfg.checks.push_back(parse_check(checks[i], i));
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config: JSON parse error in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

}  // namespace bjet::cli
