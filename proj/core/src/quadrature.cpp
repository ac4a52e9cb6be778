#include "bjet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "bjet/parallel.hpp"
#include "bjet/rng.hpp"

namespace bjet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite(Complex v, double vcoord) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NumericalError("quadrature: non-finite integrand sample at log|z'|^2 = " +
                         std::to_string(vcoord));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (radial_order < 2 || angular_order < 2 || tangential_order < 2)
    throw ConfigError("quadrature: all orders must be >= 2");
  if (panel_count < 1) throw ConfigError("quadrature: panel_count must be >= 1");
  if (mc_samples < 10000) throw ConfigError("quadrature: mc_samples must be >= 10^4");
}

// ---------------------------------------------------------------------------
// Gauss-Legendre
// ---------------------------------------------------------------------------

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton from the Chebyshev-like initial guess
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw ContractViolation("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

double sphere_area(int k) {
  double v = 2.0;
  for (int i = 0; i < k; ++i) v *= kPi;
  for (int i = 2; i <= k - 1; ++i) v /= i;
  return v;
}

// ---------------------------------------------------------------------------
// Angular grids
// ---------------------------------------------------------------------------

AngularGrid make_angular_grid(int k, int order, std::span<const double> breaks) {
  AngularGrid grid;
  const int m = std::max(order, 4);
  if (k == 1) {
    if (breaks.empty()) {
      grid.dirs.reserve(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        const double th = 2.0 * kPi * j / m;
        grid.dirs.push_back({Complex(std::cos(th), std::sin(th))});
        grid.weights.push_back(2.0 * kPi / m);
      }
      return grid;
    }
    // panelwise Gauss-Legendre between the kink directions; generous orders
    // because the ray radius varies like powers of sec(theta) within an arc
    std::vector<double> edges(breaks.begin(), breaks.end());
    std::sort(edges.begin(), edges.end());
    for (std::size_t a = 0; a < edges.size(); ++a) {
      const double lo = edges[a];
      const double hi = a + 1 < edges.size() ? edges[a + 1] : edges[0] + 2.0 * kPi;
      const double len = hi - lo;
      if (!(len > 1e-14)) continue;
      const int n = std::max(12, static_cast<int>(std::ceil(m * len / (2.0 * kPi))) + 16);
      const GaussRule& gl = gauss_legendre(n);
      for (int i = 0; i < n; ++i) {
        const double th = 0.5 * (lo + hi) + 0.5 * len * gl.nodes[static_cast<std::size_t>(i)];
        grid.dirs.push_back({Complex(std::cos(th), std::sin(th))});
        grid.weights.push_back(0.5 * len * gl.weights[static_cast<std::size_t>(i)]);
      }
    }
    return grid;
  }
  if (k == 2) {
    std::vector<std::pair<double, double>> w_panels;
    if (breaks.empty()) {
      w_panels.emplace_back(-1.0, 1.0);
    } else {
      std::vector<double> edges{-1.0, 1.0};
      for (double b : breaks)
        if (b > -1.0 + 1e-14 && b < 1.0 - 1e-14) edges.push_back(b);
      std::sort(edges.begin(), edges.end());
      for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        w_panels.emplace_back(edges[i], edges[i + 1]);
    }
    const GaussRule& gw = gauss_legendre(m);
    grid.dirs.reserve(w_panels.size() * static_cast<std::size_t>(m) * m * m);
    for (const auto& [wlo, whi] : w_panels) {
      for (int iw = 0; iw < m; ++iw) {
        const double w =
            0.5 * (wlo + whi) + 0.5 * (whi - wlo) * gw.nodes[static_cast<std::size_t>(iw)];
        const double r1 = std::sqrt((1.0 + w) / 2.0);
        const double r2 = std::sqrt((1.0 - w) / 2.0);
        const double ww = 0.25 * 0.5 * (whi - wlo) * gw.weights[static_cast<std::size_t>(iw)] *
                          (2.0 * kPi / m) * (2.0 * kPi / m);
        for (int j1 = 0; j1 < m; ++j1) {
          const double t1 = 2.0 * kPi * j1 / m;
          const Complex u1(r1 * std::cos(t1), r1 * std::sin(t1));
          for (int j2 = 0; j2 < m; ++j2) {
            const double t2 = 2.0 * kPi * j2 / m;
            grid.dirs.push_back({u1, Complex(r2 * std::cos(t2), r2 * std::sin(t2))});
            grid.weights.push_back(ww);
          }
        }
      }
    }
    return grid;
  }
  throw ContractViolation("make_angular_grid: tensor grids are capped at k <= 2");
}

// ---------------------------------------------------------------------------
// Radial panels
// ---------------------------------------------------------------------------

std::vector<Panel> radial_panels(const RadialLayout& layout, int panels_per_unit) {
  if (!(layout.v_max > layout.v_min)) return {};
  const double base = 1.0 / panels_per_unit;

  std::vector<double> edges{layout.v_min, layout.v_max};
  auto push_edge = [&](double e) {
    if (e > layout.v_min + 1e-13 && e < layout.v_max - 1e-13) edges.push_back(e);
  };
  for (double kink : layout.kinks) push_edge(kink);
  if (layout.graded) {
    push_edge(layout.v_max - 2.0);
    push_edge(layout.v_max - 8.0);
  }
  if (layout.cap_width > 0) push_edge(layout.cap_from);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              edges.end());

  std::vector<Panel> panels;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    const double mid = 0.5 * (a + b);
    double w = base;
    if (layout.graded) {
      const double depth = layout.v_max - mid;
      if (depth > 8.0)
        w = std::max(base, 1.0);
      else if (depth > 2.0)
        w = std::max(base, 0.5);
    }
    if (layout.cap_width > 0 && mid >= layout.cap_from) w = std::min(w, layout.cap_width);
    const int count = std::max(1, static_cast<int>(std::ceil((b - a) / w - 1e-12)));
    for (int i = 0; i < count; ++i)
      panels.emplace_back(a + (b - a) * i / count, a + (b - a) * (i + 1) / count);
  }
  return panels;
}

double invert_green_on_slice(const GreenSpec& g, const FiberSlice& slice, double w) {
  if (g.gamma.kind == GammaSpec::Kind::Zero) return w;
  if (g.gamma.kind == GammaSpec::Kind::Constant) return w - g.gamma.c;

  double tang = 0.0;
  for (const Complex& c : slice.base_point) tang += std::norm(c);
  const auto [glo, ghi] = g.gamma.bounds(slice.extent.sup_sqnorm() + tang);
  double lo = w - ghi - 0.5, hi = w - glo + 0.5;
  if (!(green_on_slice(g, slice, lo) < w) || !(green_on_slice(g, slice, hi) > w))
    throw NumericalError("invert_green_on_slice: gamma slope too steep for inversion");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (green_on_slice(g, slice, mid) < w ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Tensor fiber integration
// ---------------------------------------------------------------------------

namespace {

// Shared worker: integrates f over { v in [A, min(B_cap, v_max(u))] } in the
// (v, u) coordinates, z' = e^{v/2} u. The measure is 1/2 e^{kv} dv dsigma(u).
Integral tensor_fiber(const FiberSlice& slice, const ScalarField& f,
                      const QuadratureConfig& cfg, double A, double B_cap,
                      std::span<const double> kinks, bool graded, double cap_from,
                      double cap_width) {
  const int k = slice.k;
  const AngularGrid grid =
      make_angular_grid(k, cfg.angular_order, slice.extent.angular_breaks());
  const GaussRule& gl = gauss_legendre(cfg.radial_order);
  const std::size_t ndirs = grid.dirs.size();

  std::vector<Complex> dir_values(ndirs, Complex{0.0, 0.0});
  std::vector<double> dir_tails(ndirs, 0.0);

  parallel_for(ndirs, [&](std::size_t j) {
    const PointCn& u = grid.dirs[j];
    const double ray = slice.extent.ray_radius(u);
    const double v_max_u = ray > 0 ? 2.0 * std::log(ray) : -kInf;
    const double B = std::min(B_cap, v_max_u);
    if (!(B > A)) return;

    RadialLayout layout;
    layout.v_min = A;
    layout.v_max = B;
    layout.kinks.assign(kinks.begin(), kinks.end());
    layout.graded = graded;
    layout.cap_from = cap_from;
    layout.cap_width = cap_width;
    const auto panels = radial_panels(layout, cfg.panel_count);

    std::vector<Complex> panel_terms(panels.size(), Complex{0.0, 0.0});
    PointCn z(u.size());
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
      const auto [a, b] = panels[pi];
      Complex acc{0.0, 0.0};
      for (int gi = 0; gi < cfg.radial_order; ++gi) {
        const double v = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[static_cast<std::size_t>(gi)];
        const double r = std::exp(0.5 * v);
        for (std::size_t c = 0; c < u.size(); ++c) z[c] = r * u[c];
        const Complex fv = f(slice.embed(z));
        check_finite(fv, v);
        const double jac = 0.5 * std::exp(k * v) * 0.5 * (b - a) *
                           gl.weights[static_cast<std::size_t>(gi)];
        acc += jac * fv;
      }
      panel_terms[pi] = acc;
    }
    dir_values[j] = grid.weights[j] * pairwise_sum(panel_terms);
    dir_tails[j] = panels.empty() ? 0.0 : grid.weights[j] * std::abs(panel_terms.front());
  });

  Integral out;
  out.value = slice.density * pairwise_sum(dir_values);
  const double tail = slice.density * pairwise_sum(dir_tails);
  out.error = tail / std::max(std::abs(out.value), 1e-300);
  return out;
}

}  // namespace

Integral integrate_fiber(const FiberSlice& slice, const ScalarField& f,
                         const QuadratureConfig& cfg, double v_floor) {
  cfg.validate();
  if (slice.k >= 3) return integrate_fiber_mc(slice, f, cfg, v_floor);
  return tensor_fiber(slice, f, cfg, v_floor, kInf, {}, true, 0.0, 0.0);
}

Integral integrate_fiber_region(const ModelContext& ctx, const FiberSlice& slice,
                                const ScalarField& f, const QuadratureConfig& cfg,
                                double g_ceiling, double v_floor,
                                std::span<const double> g_kinks, double g_floor) {
  cfg.validate();
  double B_cap = kInf;
  if (std::isfinite(g_ceiling)) B_cap = invert_green_on_slice(ctx.green, slice, g_ceiling);
  double A = v_floor;
  if (std::isfinite(g_floor))
    A = std::max(A, invert_green_on_slice(ctx.green, slice, g_floor));
  std::vector<double> kinks;
  for (double gk : g_kinks) kinks.push_back(invert_green_on_slice(ctx.green, slice, gk));
  if (slice.k >= 3)
    throw ContractViolation("integrate_fiber_region: k >= 3 not supported on the tensor path");
  return tensor_fiber(slice, f, cfg, A, B_cap, kinks, true, 0.0, 0.0);
}

Integral integrate_fiber_shell(const ModelContext& ctx, const FiberSlice& slice,
                               ShellSpec shell, const ScalarField& f,
                               const QuadratureConfig& cfg,
                               std::span<const double> g_kinks) {
  cfg.validate();
  const double t_max = shell_t_max(slice, ctx.green, ctx.domain);
  if (shell.t > t_max)
    throw RangeError("integrate_fiber_shell: shell escapes the slice; maximal admissible t = " +
                     std::to_string(t_max));
  const double v_lo = invert_green_on_slice(ctx.green, slice, shell.t);
  const double v_hi = invert_green_on_slice(ctx.green, slice, shell.t + ShellSpec::width);
  std::vector<double> kinks;
  for (double gk : g_kinks)
    if (gk > shell.t && gk < shell.t + ShellSpec::width)
      kinks.push_back(invert_green_on_slice(ctx.green, slice, gk));
  if (slice.k >= 3) {
    // stratified Monte Carlo confined to the shell window
    return integrate_fiber_mc(slice,
        [&](std::span<const Complex> z) -> Complex {
          double s = 0.0;
          for (int i = 0; i < slice.k; ++i) s += std::norm(z[static_cast<std::size_t>(i)]);
          const double G = std::log(s) + ctx.green.gamma.value(z);
          if (G <= shell.t || G >= shell.t + ShellSpec::width) return Complex{0.0, 0.0};
          return f(z);
        },
        cfg, v_lo, v_hi);
  }
  return tensor_fiber(slice, f, cfg, v_lo, v_hi, kinks, false, 0.0, 0.0);
}

// ---------------------------------------------------------------------------
// Tangential quadrature
// ---------------------------------------------------------------------------

namespace {

std::vector<TangNode> disc_nodes(double radius, int radial_order, int angular_count) {
  const GaussRule& gl = gauss_legendre(radial_order);
  const int m = std::max(angular_count, 4);
  std::vector<TangNode> nodes;
  nodes.reserve(static_cast<std::size_t>(radial_order) * m);
  const double R2 = radius * radius;
  for (int i = 0; i < radial_order; ++i) {
    const double t = R2 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0) / 2.0;
    const double wt = gl.weights[static_cast<std::size_t>(i)] * R2 / 2.0;
    const double rho = std::sqrt(t);
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * kPi * j / m;
      nodes.push_back({{Complex(rho * std::cos(th), rho * std::sin(th))},
                       0.5 * wt * (2.0 * kPi / m)});
    }
  }
  return nodes;
}

std::vector<TangNode> rect_nodes(const Rect& r, int order) {
  const GaussRule& gl = gauss_legendre(order);
  std::vector<TangNode> nodes;
  nodes.reserve(static_cast<std::size_t>(order) * order);
  const double cx = 0.5 * (r.re_min + r.re_max), hx = 0.5 * (r.re_max - r.re_min);
  const double cy = 0.5 * (r.im_min + r.im_max), hy = 0.5 * (r.im_max - r.im_min);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      nodes.push_back({{Complex(cx + hx * gl.nodes[static_cast<std::size_t>(i)],
                                cy + hy * gl.nodes[static_cast<std::size_t>(j)])},
                       hx * gl.weights[static_cast<std::size_t>(i)] * hy *
                           gl.weights[static_cast<std::size_t>(j)]});
  return nodes;
}

std::vector<TangNode> product_nodes(std::vector<std::vector<TangNode>> factors) {
  std::vector<TangNode> out{{PointCn{}, 1.0}};
  for (const auto& f : factors) {
    std::vector<TangNode> next;
    next.reserve(out.size() * f.size());
    for (const auto& base : out)
      for (const auto& node : f) {
        TangNode n = base;
        n.x.insert(n.x.end(), node.x.begin(), node.x.end());
        n.w *= node.w;
        next.push_back(std::move(n));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<TangNode> tangential_nodes(const CnRegion& region, int radial_order,
                                       int angular_count) {
  switch (region.kind) {
    case CnRegion::Kind::Point:
      return {{PointCn{}, 1.0}};
    case CnRegion::Kind::Ball: {
      if (region.dim == 1) return disc_nodes(region.ball_radius, radial_order, angular_count);
      if (region.dim == 2) {
        // rho^3 drho dsigma; tau = rho^4 flattens the radial factor
        const GaussRule& gl = gauss_legendre(radial_order);
        const AngularGrid sph = make_angular_grid(2, angular_count);
        std::vector<TangNode> nodes;
        const double R4 = std::pow(region.ball_radius, 4.0);
        for (int i = 0; i < radial_order; ++i) {
          const double tau = R4 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0) / 2.0;
          const double wt = gl.weights[static_cast<std::size_t>(i)] * R4 / 2.0;
          const double rho = std::pow(tau, 0.25);
          for (std::size_t j = 0; j < sph.dirs.size(); ++j) {
            nodes.push_back({{rho * sph.dirs[j][0], rho * sph.dirs[j][1]},
                             0.25 * wt * sph.weights[j]});
          }
        }
        return nodes;
      }
      throw ConfigError("tangential_nodes: ball footprints supported up to complex dim 2");
    }
    case CnRegion::Kind::Polydisc: {
      std::vector<std::vector<TangNode>> factors;
      for (double r : region.radii) factors.push_back(disc_nodes(r, radial_order, angular_count));
      return product_nodes(std::move(factors));
    }
    case CnRegion::Kind::Box: {
      std::vector<std::vector<TangNode>> factors;
      for (const Rect& r : region.rects) factors.push_back(rect_nodes(r, radial_order));
      return product_nodes(std::move(factors));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Domain assembly
// ---------------------------------------------------------------------------

namespace {

Integral domain_assembly(const ModelContext& ctx, const QuadratureConfig& cfg,
                         const std::function<Integral(const FiberSlice&)>& fiber_value) {
  const CnRegion footprint = tangential_region(ctx.domain, ctx.sub);
  const auto tnodes =
      tangential_nodes(footprint, cfg.tangential_order, std::max(2 * cfg.tangential_order, 8));
  std::vector<Complex> terms(tnodes.size());
  std::vector<double> errs(tnodes.size(), 0.0);
  parallel_for(tnodes.size(), [&](std::size_t i) {
    const FiberSlice slice = fiber_slice(ctx.domain, ctx.sub, tnodes[i].x);
    const Integral fi = fiber_value(slice);
    terms[i] = tnodes[i].w * fi.value;
    errs[i] = fi.error;
  });
  Integral out;
  out.value = pairwise_sum(terms);
  out.error = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
  return out;
}

}  // namespace

Integral integrate_domain(const ModelContext& ctx, const ScalarField& f,
                          const QuadratureConfig& cfg, double v_floor) {
  cfg.validate();
  return domain_assembly(ctx, cfg, [&](const FiberSlice& slice) {
    return integrate_fiber(slice, f, cfg, v_floor);
  });
}

Integral integrate_domain_shell(const ModelContext& ctx, ShellSpec shell, const ScalarField& f,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  // reject up front with the tightest admissible t over the footprint
  const CnRegion footprint = tangential_region(ctx.domain, ctx.sub);
  const auto tnodes =
      tangential_nodes(footprint, cfg.tangential_order, std::max(2 * cfg.tangential_order, 8));
  double t_max = kInf;
  for (const auto& node : tnodes) {
    const FiberSlice slice = fiber_slice(ctx.domain, ctx.sub, node.x);
    t_max = std::min(t_max, shell_t_max(slice, ctx.green, ctx.domain));
  }
  if (shell.t > t_max)
    throw RangeError("integrate_domain_shell: shell escapes D; maximal admissible t = " +
                     std::to_string(t_max));
  return domain_assembly(ctx, cfg, [&](const FiberSlice& slice) {
    return integrate_fiber_shell(ctx, slice, shell, f, cfg);
  });
}

// ---------------------------------------------------------------------------
// Sphere integrals
// ---------------------------------------------------------------------------

double sphere_monomial_moment(const MultiIndex& alpha, int k) {
  // int_{S^{2k-1}} |u^alpha|^2 dsigma = 2 pi^k alpha! / (k-1+|alpha|)!
  double v = 2.0;
  for (int i = 0; i < k; ++i) v *= kPi;
  v *= alpha.factorial();
  const int top = k - 1 + alpha.total_degree();
  for (int i = 2; i <= top; ++i) v /= i;
  return v;
}

Complex sphere_integral(const std::map<MultiIndex, Complex>& f,
                        const std::map<MultiIndex, Complex>& g, int k) {
  auto check = [&](const std::map<MultiIndex, Complex>& h) -> int {
    int deg = -1;
    for (const auto& [idx, c] : h) {
      if (idx.size() != k)
        throw ContractViolation("sphere_integral: index arity differs from codimension");
      if (deg < 0) deg = idx.total_degree();
      if (idx.total_degree() != deg)
        throw ContractViolation("sphere_integral: input is not homogeneous");
    }
    return deg;
  };
  const int df = check(f);
  const int dg = check(g);
  if (df < 0 || dg < 0 || df != dg) return Complex{0.0, 0.0};  // orthogonal degrees / zero

  Complex acc{0.0, 0.0};
  for (const auto& [idx, cf] : f) {
    auto it = g.find(idx);
    if (it == g.end()) continue;
    acc += cf * std::conj(it->second) * sphere_monomial_moment(idx, k);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace {

constexpr int kReplicates = 8;

PointCn gaussian_direction(Rng& rng, int k) {
  PointCn u(static_cast<std::size_t>(k));
  double norm2 = 0.0;
  for (int i = 0; i < k; ++i) {
    double g0 = 0.0, g1 = 0.0;
    rng.next_gauss_pair(g0, g1);
    u[static_cast<std::size_t>(i)] = Complex(g0, g1);
    norm2 += g0 * g0 + g1 * g1;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : u) c *= inv;
  return u;
}

Integral combine_replicates(std::span<const double> re, std::span<const double> im) {
  const std::size_t n = re.size();
  double mr = 0.0, mi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mr += re[i];
    mi += im[i];
  }
  mr /= static_cast<double>(n);
  mi /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    var += (re[i] - mr) * (re[i] - mr) + (im[i] - mi) * (im[i] - mi);
  var /= static_cast<double>(n - 1);
  Integral out;
  out.value = Complex(mr, mi);
  out.error = std::sqrt(var / static_cast<double>(n));
  return out;
}

}  // namespace

Integral sphere_integral_mc(int k, const ScalarField& R, const QuadratureConfig& cfg) {
  cfg.validate();
  const std::int64_t per_rep = std::max<std::int64_t>(cfg.mc_samples / kReplicates, 100);
  std::vector<double> rep_re(kReplicates, 0.0), rep_im(kReplicates, 0.0);

  parallel_for(kReplicates, [&](std::size_t rep) {
    Rng rng(mix_seed(cfg.seed, 0x5f3759df + rep));
    Complex acc{0.0, 0.0};
    std::int64_t count = 0;
    if (k == 1) {
      const std::int64_t n = per_rep;
      for (std::int64_t j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * (static_cast<double>(j) + rng.next_double()) /
                          static_cast<double>(n);
        acc += R(PointCn{Complex(std::cos(th), std::sin(th))});
        ++count;
      }
    } else if (k == 2) {
      // stratified over (|u1|^2, theta1, theta2); |u1|^2 is uniform on [0,1]
      const std::int64_t n = std::max<std::int64_t>(
          static_cast<std::int64_t>(std::cbrt(static_cast<double>(per_rep))), 2);
      for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
          for (std::int64_t c = 0; c < n; ++c) {
            const double m = (static_cast<double>(a) + rng.next_double()) / static_cast<double>(n);
            const double t1 = 2.0 * kPi * (static_cast<double>(b) + rng.next_double()) /
                              static_cast<double>(n);
            const double t2 = 2.0 * kPi * (static_cast<double>(c) + rng.next_double()) /
                              static_cast<double>(n);
            const double r1 = std::sqrt(m), r2 = std::sqrt(1.0 - m);
            acc += R(PointCn{Complex(r1 * std::cos(t1), r1 * std::sin(t1)),
                             Complex(r2 * std::cos(t2), r2 * std::sin(t2))});
            ++count;
          }
    } else {
      for (std::int64_t j = 0; j < per_rep; ++j) {
        acc += R(gaussian_direction(rng, k));
        ++count;
      }
    }
    const Complex est = sphere_area(k) * acc / static_cast<double>(count);
    rep_re[rep] = est.real();
    rep_im[rep] = est.imag();
  });
  return combine_replicates(rep_re, rep_im);
}

Integral integrate_fiber_mc(const FiberSlice& slice, const ScalarField& f,
                            const QuadratureConfig& cfg, double v_floor, double v_ceiling) {
  cfg.validate();
  const int k = slice.k;
  // global radial ceiling; direction-dependent boundary handled by rejection
  double sup_r = 0.0;
  switch (slice.extent.kind) {
    case CnRegion::Kind::Ball:
      sup_r = slice.extent.ball_radius;
      break;
    case CnRegion::Kind::Polydisc:
      sup_r = *std::max_element(slice.extent.radii.begin(), slice.extent.radii.end());
      break;
    case CnRegion::Kind::Box: {
      for (const Rect& r : slice.extent.rects)
        sup_r = std::max(sup_r, std::sqrt(std::max(
                                    {r.re_min * r.re_min, r.re_max * r.re_max,
                                     r.im_min * r.im_min, r.im_max * r.im_max})) * 1.4142135623730951);
      break;
    }
    case CnRegion::Kind::Point:
      return {};
  }
  const double v_max = std::min(2.0 * std::log(sup_r), v_ceiling);
  if (!(v_max > v_floor)) return {};

  const std::int64_t per_rep = std::max<std::int64_t>(cfg.mc_samples / kReplicates, 100);
  const std::int64_t n_strata =
      std::max<std::int64_t>(8, static_cast<std::int64_t>(std::ceil((v_max - v_floor) * 2.0)));
  const std::int64_t per_stratum = std::max<std::int64_t>(1, per_rep / n_strata);
  const double h = (v_max - v_floor) / static_cast<double>(n_strata);
  const double area = sphere_area(k);

  std::vector<double> rep_re(kReplicates, 0.0), rep_im(kReplicates, 0.0);
  parallel_for(kReplicates, [&](std::size_t rep) {
    Rng rng(mix_seed(cfg.seed, 0x9e3779b9 + rep));
    std::vector<Complex> stratum_terms(static_cast<std::size_t>(n_strata));
    PointCn z(static_cast<std::size_t>(k));
    for (std::int64_t si = 0; si < n_strata; ++si) {
      Complex acc{0.0, 0.0};
      for (std::int64_t j = 0; j < per_stratum; ++j) {
        const double v = v_floor + h * (static_cast<double>(si) + rng.next_double());
        const PointCn u = gaussian_direction(rng, k);
        const double r = std::exp(0.5 * v);
        for (int c = 0; c < k; ++c) z[static_cast<std::size_t>(c)] = r * u[static_cast<std::size_t>(c)];
        if (!slice.extent.contains(z, 0.0)) continue;
        const Complex fv = f(slice.embed(z));
        check_finite(fv, v);
        acc += 0.5 * std::exp(k * v) * fv;
      }
      stratum_terms[static_cast<std::size_t>(si)] =
          area * h * acc / static_cast<double>(per_stratum);
    }
    const Complex est = slice.density * pairwise_sum(stratum_terms);
    rep_re[rep] = est.real();
    rep_im[rep] = est.imag();
  });
  return combine_replicates(rep_re, rep_im);
}

}  // namespace bjet
