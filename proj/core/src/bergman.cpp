#include "bjet/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bjet/parallel.hpp"

namespace bjet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string gamma_tag(const GammaSpec& g) {
  switch (g.kind) {
    case GammaSpec::Kind::Zero:
      return "zero";
    case GammaSpec::Kind::Constant:
      return "const(" + std::to_string(g.c) + ")";
    case GammaSpec::Kind::ScaledNorm:
      return "norm(" + std::to_string(g.eps) + ")";
    case GammaSpec::Kind::RadialBump:
      return "bump(" + std::to_string(g.a) + "," + std::to_string(g.w) + ")";
  }
  return "?";
}

std::string phi_tag(const PhiSpec& p) {
  switch (p.kind) {
    case PhiSpec::Kind::Zero:
      return "zero";
    case PhiSpec::Kind::ScaledSqnorm:
      return "sqnorm(" + std::to_string(p.c) + ")";
    case PhiSpec::Kind::WeightedSqnorm:
      return "wsqnorm";
    case PhiSpec::Kind::MaxAffineLog:
      return "maxlog";
  }
  return "?";
}

}  // namespace

BasisTruncation BasisTruncation::make(int n, int k, int p, int max_degree) {
  if (p < 2) throw ConfigError("truncation: p must be >= 2");
  if (k < 1 || k > n) throw ConfigError("truncation: need 1 <= k <= n");
  BasisTruncation t;
  t.n = n;
  t.k = k;
  t.p = p;
  t.max_degree = max_degree > 0 ? max_degree : p + 6;
  if (t.max_degree < p - 1) throw ConfigError("truncation: max degree below p-1");
  for (const MultiIndex& idx : enumerate_multi_indices(n, p - 1, t.max_degree))
    if (idx.normal_degree(k) >= p - 1) t.index_set.push_back(idx);
  return t;
}

int BasisTruncation::find(const MultiIndex& alpha) const {
  const auto it = std::lower_bound(index_set.begin(), index_set.end(), alpha);
  if (it != index_set.end() && *it == alpha)
    return static_cast<int>(it - index_set.begin());
  return -1;
}

// ---------------------------------------------------------------------------
// Gram assembly
// ---------------------------------------------------------------------------

namespace {

// Evaluates all basis monomials at z via per-coordinate power tables.
struct MonomialEvaluator {
  explicit MonomialEvaluator(const BasisTruncation& t)
      : basis(&t), powers(static_cast<std::size_t>(t.n)) {
    for (auto& col : powers) col.resize(static_cast<std::size_t>(t.max_degree) + 1);
  }

  void eval(std::span<const Complex> z, VectorXc& out) {
    for (int c = 0; c < basis->n; ++c) {
      auto& col = powers[static_cast<std::size_t>(c)];
      col[0] = Complex{1.0, 0.0};
      for (int d = 1; d <= basis->max_degree; ++d) col[static_cast<std::size_t>(d)] =
          col[static_cast<std::size_t>(d - 1)] * z[static_cast<std::size_t>(c)];
    }
    for (std::size_t j = 0; j < basis->index_set.size(); ++j) {
      const MultiIndex& idx = basis->index_set[j];
      Complex v{1.0, 0.0};
      for (int c = 0; c < basis->n; ++c)
        v *= powers[static_cast<std::size_t>(c)][static_cast<std::size_t>(idx[c])];
      out(static_cast<Eigen::Index>(j)) = v;
    }
  }

  const BasisTruncation* basis;
  std::vector<std::vector<Complex>> powers;
};

}  // namespace

namespace {

// Radial panel layout shared by both gram paths.
RadialLayout gram_layout(double v_floor, double v_max, double v_kink, double q) {
  RadialLayout layout;
  layout.v_min = v_floor;
  layout.v_max = v_max;
  layout.graded = true;
  if (std::isfinite(v_kink) && v_kink > v_floor && v_kink < v_max) {
    layout.kinks = {v_kink};
    // keep panels above the kink narrow enough for e^{-q(G-s)} at the
    // configured Gauss order
    if (q > 4.0) {
      layout.cap_from = v_kink;
      layout.cap_width = 4.0 / q;
    }
  }
  return layout;
}

// True when the weight restricted to every slice depends on the normal
// coordinates only through |z'|; all catalog gammas qualify, and phi unless
// it weights the normal coordinates unevenly.
bool slice_radial_weight(const ModelContext& ctx, int k) {
  if (ctx.phi.kind != PhiSpec::Kind::WeightedSqnorm) return true;
  for (int i = 1; i < k; ++i)
    if (ctx.phi.coeffs[static_cast<std::size_t>(i)] != ctx.phi.coeffs[0]) return false;
  return true;
}

}  // namespace

GramMatrix gram(const BasisTruncation& trunc, const ModelContext& ctx, const FamilyParams& fp,
                const QuadratureConfig& cfg) {
  cfg.validate();
  fp.validate();
  if (fp.p != trunc.p) throw ContractViolation("gram: family p differs from basis p");
  if (ctx.domain.n != trunc.n || ctx.sub.k != trunc.k)
    throw ContractViolation("gram: basis does not match the context dimensions");
  const int k = trunc.k;
  const int N = trunc.max_degree;
  const Eigen::Index B = static_cast<Eigen::Index>(trunc.size());

  // Angular resolution floor: monomial products reach phase degree N per
  // coordinate, and the trapezoidal circle rule is exact below the count.
  const int ang = std::max(cfg.angular_order, 2 * N + 2);
  const auto tnodes = tangential_nodes(tangential_region(ctx.domain, ctx.sub),
                                       std::max(cfg.tangential_order, N + 2),
                                       std::max(2 * cfg.tangential_order, 2 * N + 2));
  // the normal extent shape does not depend on the base point on the catalog
  const std::vector<double> abreaks =
      fiber_slice(ctx.domain, ctx.sub, tnodes.front().x).extent.angular_breaks();
  const AngularGrid agrid = make_angular_grid(k, ang, abreaks);

  // Radial window: the slowest entries decay like e^{v}; reach 1e-19 below
  // both the kink and the origin.
  const double v_floor = std::min(kDefaultVFloor, fp.s - 44.0);
  const bool has_kink = fp.q > 0.0 && fp.s < 0.0;

  // Factorized path: on radially symmetric slices with slice-radial weights
  // the angular sum separates from the radial one, so the same tensor sum is
  // computed with the angular pairings hoisted out (identical nodes and
  // weights, reassociated).
  const bool factorized =
      slice_radial_weight(ctx, k) &&
      (ctx.domain.kind == DomainKind::UnitDisc || ctx.domain.kind == DomainKind::UnitBall ||
       (ctx.domain.kind == DomainKind::Polydisc && k == 1));

  // distinct normal and tangential parts of the basis
  std::vector<MultiIndex> normals, tangs;
  std::vector<int> nid(trunc.size()), tid(trunc.size()), ndeg(trunc.size());
  for (std::size_t i = 0; i < trunc.size(); ++i) {
    const MultiIndex np = trunc.index_set[i].normal_part(k);
    const MultiIndex tp = trunc.index_set[i].tangential_part(k);
    auto nit = std::find(normals.begin(), normals.end(), np);
    if (nit == normals.end()) {
      normals.push_back(np);
      nit = normals.end() - 1;
    }
    nid[i] = static_cast<int>(nit - normals.begin());
    ndeg[i] = np.total_degree();
    auto tit = std::find(tangs.begin(), tangs.end(), tp);
    if (tit == tangs.end()) {
      tangs.push_back(tp);
      tit = tangs.end() - 1;
    }
    tid[i] = static_cast<int>(tit - tangs.begin());
  }

  // angular pairing matrix over the distinct normal parts
  MatrixXc pairing(normals.size(), normals.size());
  if (factorized) {
    for (std::size_t a = 0; a < normals.size(); ++a)
      for (std::size_t b = 0; b < normals.size(); ++b) {
        Complex acc{0.0, 0.0};
        for (std::size_t ui = 0; ui < agrid.dirs.size(); ++ui)
          acc += agrid.weights[ui] * std::conj(normals[a].evaluate(agrid.dirs[ui])) *
                 normals[b].evaluate(agrid.dirs[ui]);
        pairing(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
      }
  }

  std::vector<MatrixXc> partial(tnodes.size());
  std::vector<MatrixXc> tails(tnodes.size());
  const GaussRule& gl = gauss_legendre(cfg.radial_order);

  parallel_for(tnodes.size(), [&](std::size_t ti) {
    const FiberSlice slice = fiber_slice(ctx.domain, ctx.sub, tnodes[ti].x);
    MatrixXc local = MatrixXc::Zero(B, B);
    MatrixXc tail = MatrixXc::Zero(B, B);

    double v_kink = kInf;
    if (has_kink) v_kink = invert_green_on_slice(ctx.green, slice, fp.s);

    if (factorized) {
      const double ray = slice.extent.radially_symmetric()
                             ? slice.extent.ray_radius(PointCn(static_cast<std::size_t>(k),
                                                              Complex{1.0 / std::sqrt(double(k)), 0.0}))
                             : 0.0;
      if (!(ray > 0)) {
        partial[ti] = std::move(local);
        tails[ti] = std::move(tail);
        return;
      }
      const double v_max = 2.0 * std::log(ray);
      const auto panels = radial_panels(gram_layout(v_floor, v_max, v_kink, fp.q),
                                        cfg.panel_count);

      // radial moments int e^{m v/2} (1/2) e^{kv} e^{-w(v)} dv, m = deg sums
      std::vector<double> moments(static_cast<std::size_t>(2 * N + 1), 0.0);
      std::vector<double> tail_moments(static_cast<std::size_t>(2 * N + 1), 0.0);
      PointCn z_ref(static_cast<std::size_t>(trunc.n), Complex{0.0, 0.0});
      std::copy(tnodes[ti].x.begin(), tnodes[ti].x.end(), z_ref.begin() + k);
      for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto [a, b] = panels[pi];
        for (int gi = 0; gi < cfg.radial_order; ++gi) {
          const double v =
              0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[static_cast<std::size_t>(gi)];
          const double rho = std::exp(0.5 * v);
          z_ref[0] = Complex{rho, 0.0};
          const double w = family_weight(ctx.green, ctx.phi, fp, ctx.domain, z_ref);
          const double density = std::exp(-w);
          if (density == 0.0) continue;
          if (!std::isfinite(density))
            throw NumericalError("gram: non-finite weight sample at v = " + std::to_string(v));
          const double base = 0.5 * std::exp(k * v) * 0.5 * (b - a) *
                              gl.weights[static_cast<std::size_t>(gi)] * density *
                              slice.density;
          double pw = 1.0;
          for (int m = 0; m <= 2 * N; ++m) {
            moments[static_cast<std::size_t>(m)] += base * pw;
            if (pi == 0) tail_moments[static_cast<std::size_t>(m)] += base * pw;
            pw *= rho;
          }
        }
      }

      std::vector<Complex> tv(tangs.size());
      for (std::size_t t = 0; t < tangs.size(); ++t)
        tv[t] = tangs[t].evaluate(tnodes[ti].x);
      for (Eigen::Index i = 0; i < B; ++i)
        for (Eigen::Index j = 0; j < B; ++j) {
          const Complex ang_ij = pairing(nid[static_cast<std::size_t>(i)],
                                         nid[static_cast<std::size_t>(j)]);
          if (ang_ij == Complex{0.0, 0.0}) continue;
          const Complex tfac = std::conj(tv[static_cast<std::size_t>(
                                   tid[static_cast<std::size_t>(i)])]) *
                               tv[static_cast<std::size_t>(tid[static_cast<std::size_t>(j)])];
          const int m = ndeg[static_cast<std::size_t>(i)] + ndeg[static_cast<std::size_t>(j)];
          const Complex common = tnodes[ti].w * ang_ij * tfac;
          local(i, j) += common * moments[static_cast<std::size_t>(m)];
          tail(i, j) += common * tail_moments[static_cast<std::size_t>(m)];
        }
    } else {
      MonomialEvaluator monos(trunc);
      VectorXc mv(B), mvc(B);
      PointCn full(static_cast<std::size_t>(trunc.n), Complex{0.0, 0.0});
      std::copy(tnodes[ti].x.begin(), tnodes[ti].x.end(), full.begin() + k);

      for (std::size_t ai = 0; ai < agrid.dirs.size(); ++ai) {
        const PointCn& u = agrid.dirs[ai];
        const double ray = slice.extent.ray_radius(u);
        if (!(ray > 0)) continue;
        const double v_max = 2.0 * std::log(ray);
        const auto panels = radial_panels(gram_layout(v_floor, v_max, v_kink, fp.q),
                                          cfg.panel_count);

        for (std::size_t pi = 0; pi < panels.size(); ++pi) {
          const auto [a, b] = panels[pi];
          for (int gi = 0; gi < cfg.radial_order; ++gi) {
            const double v =
                0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[static_cast<std::size_t>(gi)];
            const double r = std::exp(0.5 * v);
            for (int c = 0; c < k; ++c)
              full[static_cast<std::size_t>(c)] = r * u[static_cast<std::size_t>(c)];
            const double w = family_weight(ctx.green, ctx.phi, fp, ctx.domain, full);
            const double density = std::exp(-w);
            if (density == 0.0) continue;
            if (!std::isfinite(density))
              throw NumericalError("gram: non-finite weight sample at v = " +
                                   std::to_string(v));
            const double node_w = tnodes[ti].w * agrid.weights[ai] * 0.5 *
                                  std::exp(k * v) * 0.5 * (b - a) *
                                  gl.weights[static_cast<std::size_t>(gi)] * density *
                                  slice.density;
            monos.eval(full, mv);
            mvc = mv.conjugate();
            local.selfadjointView<Eigen::Lower>().rankUpdate(mvc, node_w);
            if (pi == 0) tail.selfadjointView<Eigen::Lower>().rankUpdate(mvc, node_w);
          }
        }
      }
      local = MatrixXc(local.selfadjointView<Eigen::Lower>());
      tail = MatrixXc(tail.selfadjointView<Eigen::Lower>());
    }
    partial[ti] = std::move(local);
    tails[ti] = std::move(tail);
  });

  MatrixXc acc = MatrixXc::Zero(B, B);
  MatrixXc tail_acc = MatrixXc::Zero(B, B);
  for (std::size_t ti = 0; ti < partial.size(); ++ti) {
    acc += partial[ti];
    tail_acc += tails[ti];
  }

  GramMatrix gm;
  gm.basis = trunc;
  gm.entries = MatrixXc(acc.selfadjointView<Eigen::Lower>());
  for (Eigen::Index i = 0; i < B; ++i)  // Gram diagonals are real by definition
    gm.entries(i, i) = Complex{gm.entries(i, i).real(), 0.0};

  // truncation diagnostic: deepest-panel contribution, entrywise relative to
  // the diagonal scale; a hot tail means the integral did not converge
  double worst = 0.0;
  int worst_i = -1, worst_j = -1;
  const MatrixXc tail_full = MatrixXc(tail_acc.selfadjointView<Eigen::Lower>());
  for (Eigen::Index i = 0; i < B; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double scale =
          std::sqrt(std::abs(gm.entries(i, i)) * std::abs(gm.entries(j, j))) + 1e-300;
      const double rel = std::abs(tail_full(i, j)) / scale;
      if (rel > worst) {
        worst = rel;
        worst_i = static_cast<int>(i);
        worst_j = static_cast<int>(j);
      }
    }
  gm.max_tail = worst;
  if (worst > 1e-6)
    throw NumericalError("gram: radial truncation did not converge at entry (" +
                         std::to_string(worst_i) + "," + std::to_string(worst_j) +
                         "), tail fraction " + std::to_string(worst));

  std::ostringstream tag;
  tag << "phi=" << phi_tag(ctx.phi) << ";gamma=" << gamma_tag(ctx.green.gamma)
      << ";p=" << fp.p << ";k=" << k << ";s=" << fp.s << ";q=" << fp.q << ";N=" << N;
  gm.weight_tag = tag.str();
  return gm;
}

// ---------------------------------------------------------------------------
// Dual functionals
// ---------------------------------------------------------------------------

DualFunctional functional_moments(const JetSection& g, const BasisTruncation& trunc,
                                  const ModelContext& ctx, const QuadratureConfig& cfg) {
  g.validate();
  cfg.validate();
  if (g.n != trunc.n || g.k != trunc.k || g.p != trunc.p)
    throw ContractViolation("functional_moments: section does not match the basis");

  DualFunctional xi;
  xi.source = g;
  xi.basis = trunc;
  xi.moments = VectorXc::Zero(static_cast<Eigen::Index>(trunc.size()));

  const int k = trunc.k;
  const int p = trunc.p;
  const int gdeg = g.tangential_degree();
  const auto tnodes = tangential_nodes(
      tangential_region(ctx.domain, ctx.sub), std::max(cfg.tangential_order, trunc.max_degree + gdeg + 2),
      std::max(2 * cfg.tangential_order, 2 * (trunc.max_degree + gdeg) + 4));

  for (std::size_t bi = 0; bi < trunc.size(); ++bi) {
    const MultiIndex& alpha = trunc.index_set[bi];
    if (alpha.normal_degree(k) != p - 1) continue;  // xi_g kills I_S^p
    const MultiIndex normal = alpha.normal_part(k);
    const MultiIndex tang = alpha.tangential_part(k);
    const auto comp = g.components.find(normal);
    if (comp == g.components.end()) continue;
    const double sigma = sphere_monomial_moment(normal, k);

    std::vector<Complex> terms(tnodes.size());
    for (std::size_t ti = 0; ti < tnodes.size(); ++ti) {
      const auto& node = tnodes[ti];
      PointCn xhat(static_cast<std::size_t>(k), Complex{0.0, 0.0});
      xhat.insert(xhat.end(), node.x.begin(), node.x.end());
      const double pref =
          std::exp(-ctx.phi.value(xhat) - (p + k - 1) * ctx.green.gamma.value(xhat));
      terms[ti] = node.w * 0.5 * pref * sigma * tang.evaluate(node.x) *
                  std::conj(eval_poly(comp->second, node.x));
    }
    xi.moments(static_cast<Eigen::Index>(bi)) = pairwise_sum(terms);
  }
  return xi;
}

double dual_norm(const DualFunctional& xi, const GramMatrix& gm) {
  if (xi.basis.index_set != gm.basis.index_set)
    throw ContractViolation("dual_norm: functional and Gram use different bases");
  const CholeskyFactor chol(gm.entries);  // ConditioningError carries the pivot
  return chol.inverse_quadratic_form(xi.moments.conjugate());
}

std::vector<SweepRow> dual_norm_sweep(const DualFunctional& xi, const ModelContext& ctx,
                                      std::span<const double> s_grid, double q,
                                      const QuadratureConfig& cfg) {
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (s_grid[i] > 0.0) throw ContractViolation("dual_norm_sweep: grid must lie in (-inf, 0]");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
      throw ContractViolation("dual_norm_sweep: grid must be sorted increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(s_grid.size());
  for (double s : s_grid) {
    FamilyParams fp{s, q, xi.basis.p};
    const GramMatrix gm = gram(xi.basis, ctx, fp, cfg);
    SweepRow row;
    row.s = s;
    row.norm_sq = dual_norm(xi, gm);
    row.es_norm_sq = std::exp(s) * row.norm_sq;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bjet
