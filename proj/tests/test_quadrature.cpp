#include <doctest.h>

#include <cmath>

#include "bjet/quadrature.hpp"
#include "bjet/rng.hpp"
#include "oracles.hpp"

using namespace bjet;

namespace {

const double kPi = oracle::kPi;

ModelContext disc_context() {
  ModelContext ctx;
  ctx.domain = DomainSpec::unit_disc();
  ctx.sub = {1};
  ctx.green = {1, {}};
  return ctx;
}

ModelContext polydisc2_context() {
  ModelContext ctx;
  ctx.domain = DomainSpec::polydisc({1.0, 1.0});
  ctx.sub = {1};
  ctx.green = {1, {}};
  return ctx;
}

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussRule& r = gauss_legendre(6);
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += r.weights[i] * std::pow(r.nodes[i], 8);
  CHECK(acc == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  double total = 0.0;
  for (double w : r.weights) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("fiber integrals on the catalog") {
  const QuadratureConfig cfg;
  SUBCASE("area of the unit disc") {
    const auto slice = fiber_slice(DomainSpec::unit_disc(), {1}, {});
    const auto r = integrate_fiber(slice, [](std::span<const Complex>) { return Complex{1, 0}; }, cfg);
    CHECK(std::abs(r.value.real() - kPi) < 1e-10);
    CHECK(std::abs(r.value.imag()) < 1e-14);
  }
  SUBCASE("log-shell indicator: |z|^{-2} over one log-radius unit") {
    const auto slice = fiber_slice(DomainSpec::unit_disc(), {1}, {});
    const auto r = integrate_fiber(
        slice,
        [](std::span<const Complex> z) -> Complex {
          const double m = std::norm(z[0]);
          if (m <= std::exp(-3.0) || m >= std::exp(-2.0)) return {0, 0};
          return Complex{1.0 / m, 0.0};
        },
        cfg);
    CHECK(std::abs(r.value.real() - kPi) < 1e-9);
  }
  SUBCASE("volume of the unit ball in C^2") {
    // radial oracle: integral of area(S^3) r^3
    const double vol = oracle::integrate(
        [](double r) { return 2.0 * kPi * kPi * r * r * r; }, 0.0, 1.0);
    CHECK(vol == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
    const auto slice = fiber_slice(DomainSpec::unit_ball(2), {2}, {});
    const auto r = integrate_fiber(slice, [](std::span<const Complex>) { return Complex{1, 0}; }, cfg);
    CHECK(std::abs(r.value.real() - vol) < 1e-8);
  }
}

TEST_CASE("shell integrals") {
  const QuadratureConfig cfg;
  const auto ctx = disc_context();
  const auto slice = ctx.slice_at({});

  SUBCASE("|z|^2 e^{-2G} over a deep shell is pi") {
    const auto field = [](std::span<const Complex> z) -> Complex {
      const double m = std::norm(z[0]);
      return Complex{m / (m * m), 0.0};  // |z|^2 e^{-2 log|z|^2}
    };
    const auto r = integrate_fiber_shell(ctx, slice, ShellSpec{-10.0}, field, cfg);
    CHECK(std::abs(r.value.real() - kPi) < 1e-10);
  }
  SUBCASE("zero integrand") {
    const auto r = integrate_fiber_shell(
        ctx, slice, ShellSpec{-10.0}, [](std::span<const Complex>) { return Complex{0, 0}; },
        cfg);
    CHECK(r.value == Complex{0.0, 0.0});
  }
  SUBCASE("escaping shell raises a range error") {
    CHECK_THROWS_AS(integrate_fiber_shell(ctx, slice, ShellSpec{-0.5},
                                          [](std::span<const Complex>) { return Complex{1, 0}; },
                                          cfg),
                    RangeError);
  }
  SUBCASE("domain shell on the bidisc: fiber value times tangential area") {
    const auto ctx2 = polydisc2_context();
    const auto field = [](std::span<const Complex> z) -> Complex {
      const double m = std::norm(z[0]);
      return Complex{1.0 / m, 0.0};
    };
    const auto r = integrate_domain_shell(ctx2, ShellSpec{-12.0}, field, cfg);
    CHECK(std::abs(r.value.real() - kPi * kPi) < 1e-8);
  }
}

TEST_CASE("shell integration splits panels at a declared weight kink") {
  const QuadratureConfig cfg;
  const auto ctx = disc_context();
  const auto slice = ctx.slice_at({});
  const double s = -4.5, q = 6.0, t = -5.0;
  const auto field = [s, q](std::span<const Complex> z) -> Complex {
    const double G = std::log(std::norm(z[0]));
    return Complex{std::exp(-q * std::max(G - s, 0.0)), 0.0};
  };
  const double kinks[] = {s};
  const double got =
      integrate_fiber_shell(ctx, slice, ShellSpec{t}, field, cfg, kinks).value.real();
  // piecewise oracle around the kink: the shell measure contributes pi e^v dv
  const double lhs = oracle::integrate([](double v) { return std::exp(v); }, t, s);
  const double rhs = oracle::integrate(
      [s, q](double v) { return std::exp(v - q * (v - s)); }, s, t + 1.0);
  CHECK(oracle::rel_err(got, kPi * (lhs + rhs)) < 1e-10);
}

TEST_CASE("shell additivity: {t < G < t+2} splits into unit shells") {
  const QuadratureConfig cfg;
  const auto ctx = disc_context();
  const auto slice = ctx.slice_at({});
  const auto field = [](std::span<const Complex> z) -> Complex {
    const double m = std::norm(z[0]);
    return Complex{std::exp(-0.3 * m) / m, 0.0};
  };
  const double t = -7.0;
  const double whole =
      integrate_fiber_region(ctx, slice, field, cfg, t + 2.0, kDefaultVFloor, {}, t)
          .value.real();
  const double s1 = integrate_fiber_shell(ctx, slice, ShellSpec{t}, field, cfg).value.real();
  const double s2 =
      integrate_fiber_shell(ctx, slice, ShellSpec{t + 1.0}, field, cfg).value.real();
  CHECK(oracle::rel_err(whole, s1 + s2) < 1e-10);
}

TEST_CASE("domain integrals assemble tangential nodes with fiber integrals") {
  const QuadratureConfig cfg;
  SUBCASE("volume of the bidisc") {
    const auto ctx = polydisc2_context();
    const auto r = integrate_domain(
        ctx, [](std::span<const Complex>) { return Complex{1, 0}; }, cfg);
    CHECK(oracle::rel_err(r.value.real(), kPi * kPi) < 1e-9);
  }
  SUBCASE("volume of the ball in C^2 through k = 1 slices") {
    ModelContext ctx;
    ctx.domain = DomainSpec::unit_ball(2);
    ctx.sub = {1};
    ctx.green = {1, {}};
    const auto r = integrate_domain(
        ctx, [](std::span<const Complex>) { return Complex{1, 0}; }, cfg);
    CHECK(oracle::rel_err(r.value.real(), kPi * kPi / 2.0) < 1e-8);
  }
  SUBCASE("green inversion on slices with a scaled-norm correction") {
    ModelContext ctx;
    ctx.domain = DomainSpec::polydisc({0.8, 1.0});
    ctx.sub = {1};
    ctx.green = {1, {}};
    ctx.green.gamma.kind = GammaSpec::Kind::ScaledNorm;
    ctx.green.gamma.eps = 0.05;
    const auto slice = ctx.slice_at(PointCn{Complex{0.3, -0.2}});
    const double w = -6.0;
    const double v = invert_green_on_slice(ctx.green, slice, w);
    CHECK(green_on_slice(ctx.green, slice, v) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("sphere integrals via the monomial identity") {
  SUBCASE("circle: every |u|^{2m} integrates to 2 pi") {
    for (int m = 0; m <= 4; ++m) {
      const std::map<MultiIndex, Complex> f{{MultiIndex({m}), Complex{1, 0}}};
      CHECK(sphere_integral(f, f, 1).real() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    }
  }
  SUBCASE("|u1|^2 on S^3 is pi^2, cross-checked by the Gaussian moment oracle") {
    // int_{C^2} |z1|^2 e^{-|z|^2} = pi^2 = (1/2) Gamma(3) * I_sigma with
    // Gamma(3) computed by the radial oracle
    const double gamma3 = oracle::integrate(
        [](double r) { return 2.0 * std::pow(r, 2 * 1 + 2 * 2 - 1) * std::exp(-r * r); },
        0.0, 12.0);
    const std::map<MultiIndex, Complex> f{{MultiIndex({1, 0}), Complex{1, 0}}};
    const double is = sphere_integral(f, f, 2).real();
    CHECK(0.5 * gamma3 * is == doctest::Approx(kPi * kPi).epsilon(1e-10));
    CHECK(is == doctest::Approx(kPi * kPi).epsilon(1e-12));
  }
  SUBCASE("distinct monomials are orthogonal") {
    const std::map<MultiIndex, Complex> f{{MultiIndex({1, 0}), Complex{1, 0}}};
    const std::map<MultiIndex, Complex> g{{MultiIndex({0, 1}), Complex{1, 0}}};
    CHECK(sphere_integral(f, g, 2) == Complex{0.0, 0.0});
  }
  SUBCASE("non-homogeneous input is rejected") {
    const std::map<MultiIndex, Complex> f{{MultiIndex({1, 0}), Complex{1, 0}},
                                          {MultiIndex({2, 0}), Complex{1, 0}}};
    CHECK_THROWS_AS(sphere_integral(f, f, 2), ContractViolation);
  }
}

TEST_CASE("polar decomposition of radial integrands") {
  const QuadratureConfig cfg;
  SUBCASE("disc") {
    const auto slice = fiber_slice(DomainSpec::unit_disc(), {1}, {});
    const auto r = integrate_fiber(
        slice, [](std::span<const Complex> z) { return Complex{std::exp(-std::norm(z[0])), 0}; },
        cfg);
    const double expect = sphere_area(1) * oracle::integrate([](double rr) {
                            return rr * std::exp(-rr * rr);
                          }, 0.0, 1.0);
    CHECK(oracle::rel_err(r.value.real(), expect) < 1e-8);
  }
  SUBCASE("ball slice in C^2") {
    const auto slice = fiber_slice(DomainSpec::unit_ball(2), {2}, {});
    const auto r = integrate_fiber(
        slice,
        [](std::span<const Complex> z) {
          return Complex{std::exp(-(std::norm(z[0]) + std::norm(z[1]))), 0};
        },
        cfg);
    const double expect = sphere_area(2) * oracle::integrate([](double rr) {
                            return rr * rr * rr * std::exp(-rr * rr);
                          }, 0.0, 1.0);
    CHECK(oracle::rel_err(r.value.real(), expect) < 1e-8);
  }
}

TEST_CASE("determinism: same configuration and seed reproduce identical bits") {
  QuadratureConfig cfg;
  cfg.mc_samples = 20000;
  cfg.seed = 99;
  const auto slice = fiber_slice(DomainSpec::unit_ball(2), {2}, {});
  const auto field = [](std::span<const Complex> z) {
    return Complex{1.0 / (1.0 + std::norm(z[0])), 0.0};
  };
  const auto a = integrate_fiber_mc(slice, field, cfg);
  const auto b = integrate_fiber_mc(slice, field, cfg);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.error == b.error);

  const auto t1 = integrate_fiber(slice, field, cfg);
  const auto t2 = integrate_fiber(slice, field, cfg);
  CHECK(t1.value.real() == t2.value.real());
}

TEST_CASE("monte carlo agrees with tensor quadrature within 3 standard errors") {
  QuadratureConfig cfg;
  cfg.mc_samples = 200000;
  const auto slice = fiber_slice(DomainSpec::unit_ball(2), {2}, {});
  Rng rng(4242);
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(0.2, 2.0);
    const double b = rng.uniform(-0.5, 0.5);
    const int pw = 1 + static_cast<int>(rng.next_u64() % 3);
    cfg.seed = 1000 + static_cast<std::uint64_t>(trial);
    const auto field = [a, b, pw](std::span<const Complex> z) {
      const double m = std::norm(z[0]) + std::norm(z[1]);
      return Complex{std::pow(std::norm(z[0]), pw) * std::exp(-a * m) + b * m, 0.0};
    };
    const double tensor = integrate_fiber(slice, field, cfg).value.real();
    const auto mc = integrate_fiber_mc(slice, field, cfg);
    const double err = std::abs(mc.value.real() - tensor);
    if (err > 3.0 * mc.error + 1e-9) ++failures;
  }
  // 3 sigma across 20 trials: allow a single outlier
  CHECK(failures <= 1);
}

TEST_CASE("codimension >= 3 falls back to stratified Monte Carlo") {
  QuadratureConfig cfg;
  cfg.mc_samples = 400000;
  cfg.seed = 31337;

  ModelContext ctx;
  ctx.domain = DomainSpec::unit_ball(3);
  ctx.sub = {3};
  ctx.green = {3, {}};
  const auto slice = ctx.slice_at({});

  SUBCASE("fiber volume of the unit ball in C^3") {
    const auto r = integrate_fiber(
        slice, [](std::span<const Complex>) { return Complex{1, 0}; }, cfg);
    const double vol = kPi * kPi * kPi / 6.0;
    CHECK(std::abs(r.value.real() - vol) <= 5.0 * r.error + 2e-3 * vol);
  }
  SUBCASE("deep shell of |z1|^2 e^{-(p+k-1)G} approaches the sphere moment") {
    // p = 2, k = 3: the limit is (1/2) * 2 pi^3 1!/3! = pi^3/6
    const auto field = [&](std::span<const Complex> z) -> Complex {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += std::norm(z[static_cast<std::size_t>(i)]);
      return std::norm(z[0]) * std::pow(s, -4.0);
    };
    const auto r = integrate_fiber_shell(ctx, slice, ShellSpec{-8.0}, field, cfg);
    const double limit = kPi * kPi * kPi / 6.0;
    CHECK(std::abs(r.value.real() - limit) <= 5.0 * r.error + 5e-3 * limit);
  }
  SUBCASE("sphere Monte Carlo agrees with the monomial identity at k = 3") {
    const std::map<MultiIndex, Complex> f{{MultiIndex({2, 0, 0}), Complex{1, 0}}};
    const double exact = sphere_integral(f, f, 3).real();
    const auto mc = sphere_integral_mc(3,
        [](std::span<const Complex> u) -> Complex {
          const Complex v = u[0] * u[0];
          return v * std::conj(v);
        },
        cfg);
    CHECK(std::abs(mc.value.real() - exact) <= 5.0 * mc.error + 2e-3 * exact);
  }
}

TEST_CASE("non-finite integrand samples are reported") {
  const QuadratureConfig cfg;
  const auto slice = fiber_slice(DomainSpec::unit_disc(), {1}, {});
  CHECK_THROWS_AS(integrate_fiber(slice,
                                  [](std::span<const Complex>) {
                                    return Complex{std::nan(""), 0.0};
                                  },
                                  cfg),
                  NumericalError);
}

TEST_CASE("configuration validation") {
  QuadratureConfig cfg;
  cfg.radial_order = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.mc_samples = 100;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
