#include "bjet/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bjet/jet_metric.hpp"
#include "bjet/parallel.hpp"

namespace bjet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = 2.71828182845904523536028747135266250;

// Composite Gauss-Legendre on [a, b] with a width cap for steep exponentials.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& cfg, double max_width) {
  if (!(b > a)) return 0.0;
  const GaussRule& gl = gauss_legendre(cfg.radial_order);
  double width = 1.0 / cfg.panel_count;
  if (max_width > 0) width = std::min(width, max_width);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  std::vector<double> terms(static_cast<std::size_t>(panels), 0.0);
  for (int p = 0; p < panels; ++p) {
    const double pa = a + (b - a) * p / panels;
    const double pb = a + (b - a) * (p + 1) / panels;
    double acc = 0.0;
    for (int i = 0; i < cfg.radial_order; ++i) {
      const double t = 0.5 * (pa + pb) + 0.5 * (pb - pa) * gl.nodes[static_cast<std::size_t>(i)];
      acc += 0.5 * (pb - pa) * gl.weights[static_cast<std::size_t>(i)] * f(t);
    }
    terms[static_cast<std::size_t>(p)] = acc;
  }
  return pairwise_sum(terms);
}

}  // namespace

double OneDFunction::value(double t) const {
  switch (kind) {
    case Kind::Exponential:
      return a * std::exp(b * t);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
      return acc;
    }
    case Kind::Tabulated: {
      if (ts.empty() || t < ts.front() || t > ts.back()) return 0.0;
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      if (it == ts.begin()) return vals.front();
      if (it == ts.end()) return vals.back();
      const std::size_t j = static_cast<std::size_t>(it - ts.begin());
      const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
      return (1.0 - w) * vals[j - 1] + w * vals[j];
    }
  }
  return 0.0;
}

double OneDFunction::integral_to(double s) const {
  switch (kind) {
    case Kind::Exponential:
      if (!(b > 0)) return a == 0.0 ? 0.0 : kInf;
      return a / b * std::exp(b * s);
    case Kind::Polynomial: {
      bool zero = true;
      for (double c : coeffs)
        if (c != 0.0) zero = false;
      return zero ? 0.0 : kInf;  // nonzero polynomials diverge at -inf
    }
    case Kind::Tabulated: {
      if (ts.empty()) return 0.0;
      // supported on [ts.front(), ts.back()], zero below
      double acc = 0.0;
      for (std::size_t j = 1; j < ts.size(); ++j) {
        const double hi = std::min(s, ts[j]);
        if (hi <= ts[j - 1]) break;
        const double w = (hi - ts[j - 1]) / (ts[j] - ts[j - 1]);
        const double vhi = (1.0 - w) * vals[j - 1] + w * vals[j];
        acc += 0.5 * (vals[j - 1] + vhi) * (hi - ts[j - 1]);
      }
      return acc;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

CheckReport check_log_convexity(const SweepTable& table, double tol) {
  CheckReport rep;
  rep.name = "log_convexity";
  if (table.rows.size() < 3) throw ContractViolation("log_convexity: need at least 3 rows");
  for (const auto& [s, v] : table.rows) {
    if (!(v > 0)) {
      rep.status = CheckReport::Status::ContractViolation;
      rep.witness = s;
      rep.detail = "nonpositive value in the sweep table";
      return rep;
    }
  }
  double worst = -kInf, at = table.rows.front().first;
  for (std::size_t i = 1; i + 1 < table.rows.size(); ++i) {
    const auto& [s0, v0] = table.rows[i - 1];
    const auto& [s1, v1] = table.rows[i];
    const auto& [s2, v2] = table.rows[i + 1];
    const double h1 = s1 - s0, h2 = s2 - s1;
    const double chord = (h2 * std::log(v0) + h1 * std::log(v2)) / (h1 + h2);
    const double viol = std::log(v1) - chord;
    if (viol > worst) {
      worst = viol;
      at = s1;
    }
  }
  rep.margin = worst;
  rep.witness = at;
  rep.status = worst <= tol ? CheckReport::Status::Pass : CheckReport::Status::Fail;
  std::ostringstream os;
  os << "worst chord violation " << worst << " at s = " << at;
  rep.detail = os.str();
  return rep;
}

CheckReport check_increasing_es(const SweepTable& table, double tol) {
  CheckReport rep;
  rep.name = "increasing_es";
  if (table.rows.size() < 2) throw ContractViolation("increasing_es: need at least 2 rows");
  double worst = -kInf, at = table.rows.front().first;
  double sup = -kInf;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double es = std::exp(table.rows[i].first) * table.rows[i].second;
    sup = std::max(sup, es);
    if (i > 0) {
      const double prev =
          std::exp(table.rows[i - 1].first) * table.rows[i - 1].second;
      const double viol = (prev - es) / std::max(std::abs(es), 1e-300);
      if (viol > worst) {
        worst = viol;
        at = table.rows[i].first;
      }
    }
  }
  // endpoint bound: the norm nearest s = 0 dominates the deep-grid limit
  const double limit_est =
      std::exp(table.rows.front().first) * table.rows.front().second;
  const double top = table.rows.back().second;
  const double end_viol = (limit_est - top) / std::max(std::abs(top), 1e-300);
  if (end_viol > worst) {
    worst = end_viol;
    at = table.rows.back().first;
  }
  rep.margin = worst;
  rep.witness = at;
  rep.status = worst <= tol ? CheckReport::Status::Pass : CheckReport::Status::Fail;
  std::ostringstream os;
  os << "sup e^s v = " << sup << ", worst decrease " << worst << " at s = " << at;
  rep.detail = os.str();
  return rep;
}

CheckReport check_kernel_limit(const OneDFunction& f, double c, double q,
                               std::span<const double> s_grid, const QuadratureConfig& cfg,
                               double tol) {
  if (!(q > 1.0)) throw ContractViolation("kernel_limit: requires q > 1");
  if (s_grid.empty()) throw ContractViolation("kernel_limit: empty grid");
  CheckReport rep;
  rep.name = "kernel_limit";

  for (double s : s_grid) {
    const double mass = f.integral_to(s);
    if (!(mass <= c * std::exp(s) * (1.0 + 1e-9))) {
      rep.status = CheckReport::Status::ContractViolation;
      rep.witness = s;
      std::ostringstream os;
      os << "growth contract violated: int F = " << mass << " > C e^s = " << c * std::exp(s);
      rep.detail = os.str();
      return rep;
    }
  }

  double h_min = kInf, at = s_grid.front();
  for (double s : s_grid) {
    const double h = std::exp(-s) * integrate_1d(
        [&](double t) { return f.value(t) * std::exp(-q * (t - s)); }, s, 0.0, cfg,
        2.0 / q);
    if (h < h_min) {
      h_min = h;
      at = s;
    }
  }
  const double bound = c / (q - 1.0);
  rep.margin = (h_min - bound) / std::max(bound, 1e-300);
  rep.witness = at;
  rep.status = rep.margin <= tol ? CheckReport::Status::Pass : CheckReport::Status::Fail;
  std::ostringstream os;
  os << "min H = " << h_min << " vs C/(q-1) = " << bound;
  rep.detail = os.str();
  return rep;
}

CheckReport check_averaging_inequality(const OneDFunction& p, std::span<const double> u_grid,
                                       std::span<const double> s_grid,
                                       const QuadratureConfig& cfg, double tol) {
  if (u_grid.empty() || s_grid.empty())
    throw ContractViolation("averaging: empty grid");
  CheckReport rep;
  rep.name = "averaging";

  double lhs_min = kInf, at = s_grid.front();
  for (double s : s_grid) {
    if (!(s > 0)) throw ContractViolation("averaging: s grid must be positive");
    const double lhs =
        integrate_1d([&](double t) { return p.value(t); }, 0.0, s, cfg, s / 8.0) / s;
    if (lhs < lhs_min) {
      lhs_min = lhs;
      at = s;
    }
  }
  double rhs_max = -kInf;
  for (double u : u_grid) {
    if (!(u > 0)) throw ContractViolation("averaging: u grid must be positive");
    const double rhs = integrate_1d([&](double t) { return p.value(t) / t; }, u, kE * u,
                                    cfg, u / 2.0);
    rhs_max = std::max(rhs_max, rhs);
  }
  // the lemma needs P >= 0; spot-check on the evaluation range
  for (double s : s_grid)
    if (p.value(s) < -1e-12) {
      rep.status = CheckReport::Status::ContractViolation;
      rep.witness = s;
      rep.detail = "P takes negative values";
      return rep;
    }

  const double scale = std::max({std::abs(lhs_min), std::abs(rhs_max), 1e-300});
  rep.margin = (lhs_min - rhs_max) / scale;
  rep.witness = at;
  rep.status = rep.margin <= tol ? CheckReport::Status::Pass : CheckReport::Status::Fail;
  std::ostringstream os;
  os << "min (1/s) int P = " << lhs_min << " vs max int P/t = " << rhs_max;
  rep.detail = os.str();
  return rep;
}

// ---------------------------------------------------------------------------

CompareReport check_compare_lemma(const MultiIndex& h_normal, const ModelContext& ctx, int p,
                                  double s, std::span<const double> t_schedule,
                                  const QuadratureConfig& cfg, double c_bound) {
  if (h_normal.size() != ctx.sub.k)
    throw ContractViolation("compare_lemma: monomial arity differs from codimension");
  if (h_normal.total_degree() < p - 1)
    throw ContractViolation("compare_lemma: monomial must have normal degree >= p-1");
  if (t_schedule.empty()) throw ContractViolation("compare_lemma: empty schedule");

  const int k = ctx.sub.k;
  const PointCn origin(static_cast<std::size_t>(ctx.domain.n - k), Complex{0.0, 0.0});
  const FiberSlice slice = ctx.slice_at(origin);
  const double t_max = shell_t_max(slice, ctx.green, ctx.domain);
  if (s > t_max + 1.0)
    throw RangeError("compare_lemma: sublevel {G<s} escapes the slice");

  CoeffMap h{{h_normal, Complex{1.0, 0.0}}};

  CompareReport rep;
  for (double t : t_schedule) {
    const Complex v = weighted_shell_pairing(h, h, p, ctx, slice, t, cfg);
    rep.shell_values.emplace_back(t, v.real());
    rep.shell_limsup = std::max(rep.shell_limsup, v.real());
  }

  const int gcoeff = p + k - 2;
  ScalarField density = [&](std::span<const Complex> z) -> Complex {
    const std::span<const Complex> zn = z.first(static_cast<std::size_t>(k));
    double sn = 0.0;
    for (const Complex& c : zn) sn += std::norm(c);
    const double G = std::log(sn) + ctx.green.gamma.value(z);
    const Complex hv = eval_poly(h, zn);
    return hv * std::conj(hv) * std::exp(-ctx.phi.value(z) - gcoeff * G);
  };
  const double sub_integral =
      integrate_fiber_region(ctx, slice, density, cfg, s, std::min(kDefaultVFloor, s - 44.0))
          .value.real();
  rep.rhs_value = std::exp(-s) * sub_integral;
  rep.smallest_c = rep.rhs_value > 0 ? rep.shell_limsup / rep.rhs_value : kInf;

  rep.check.name = "compare_lemma";
  rep.check.margin = rep.smallest_c - c_bound;
  rep.check.witness = s;
  rep.check.status = rep.smallest_c <= c_bound ? CheckReport::Status::Pass
                                               : CheckReport::Status::Fail;
  std::ostringstream os;
  os << "smallest C = " << rep.smallest_c << " (bound " << c_bound << ")";
  rep.check.detail = os.str();
  return rep;
}

DecompositionReport check_family_norm_decomposition(const ModelContext& ctx, int p, double q,
                                                    std::span<const double> s_grid,
                                                    const QuadratureConfig& cfg, double tol) {
  if (!(q > 1.0)) throw ContractViolation("decomposition: requires q > 1");
  const int k = ctx.sub.k;
  const PointCn origin(static_cast<std::size_t>(ctx.domain.n - k), Complex{0.0, 0.0});
  const FiberSlice slice = ctx.slice_at(origin);

  // g' = z'^{p-1} on the first normal coordinate
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  e[0] = p - 1;
  const MultiIndex idx(e);
  CoeffMap g{{idx, Complex{1.0, 0.0}}};

  const int base_coeff = p + k - 2;
  auto base_density = [&](std::span<const Complex> z) -> Complex {
    const std::span<const Complex> zn = z.first(static_cast<std::size_t>(k));
    double sn = 0.0;
    for (const Complex& c : zn) sn += std::norm(c);
    const double G = std::log(sn) + ctx.green.gamma.value(z);
    const Complex gv = eval_poly(g, zn);
    return gv * std::conj(gv) * std::exp(-ctx.phi.value(z) - base_coeff * G);
  };

  DecompositionReport rep;
  // jet norm of the class of g' at the origin
  JetElement ex;
  ex.base_point = origin;
  ex.k = k;
  ex.coeffs = g;
  rep.jet_norm_sq = metric_closed_form(ex, ex, ctx).real();

  for (double s : s_grid) {
    const double es = std::exp(-s);
    const double v_floor = std::min(kDefaultVFloor, s - 44.0);
    const double inner =
        es * integrate_fiber_region(ctx, slice, base_density, cfg, s, v_floor).value.real();

    auto family_density = [&](std::span<const Complex> z) -> Complex {
      const std::span<const Complex> zn = z.first(static_cast<std::size_t>(k));
      double sn = 0.0;
      for (const Complex& c : zn) sn += std::norm(c);
      const double G = std::log(sn) + ctx.green.gamma.value(z);
      const Complex gv = eval_poly(g, zn);
      const double psi = std::max(G - s, 0.0);
      return gv * std::conj(gv) *
             std::exp(-ctx.phi.value(z) - base_coeff * G - q * psi);
    };
    // outer term over {G >= s} computed on its own, then compared with the
    // one-shot family integral
    const double outer =
        es * integrate_fiber_region(ctx, slice, family_density, cfg, kInf, v_floor, {}, s)
                 .value.real();
    const double kinks[] = {s};
    const double total =
        es * integrate_fiber_region(ctx, slice, family_density, cfg, kInf, v_floor, kinks)
                 .value.real();
    rep.s.push_back(s);
    rep.inner.push_back(inner);
    rep.outer.push_back(outer);
    rep.total.push_back(total);
    rep.c_estimate = std::max(rep.c_estimate, inner);
    rep.partition_defect = std::max(
        rep.partition_defect, std::abs(inner + outer - total) / std::max(total, 1e-300));
  }
  rep.liminf_estimate = *std::min_element(rep.total.begin(), rep.total.end());
  rep.bound_holds =
      rep.liminf_estimate <= rep.jet_norm_sq + rep.c_estimate / (q - 1.0) + tol;
  return rep;
}

}  // namespace bjet
