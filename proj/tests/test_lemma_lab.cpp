#include <doctest.h>

#include <cmath>

#include "bjet/lemma_lab.hpp"
#include "oracles.hpp"

using namespace bjet;

namespace {

const double kPi = oracle::kPi;
const double kE = 2.71828182845904523536;

ModelContext disc_context() {
  ModelContext ctx;
  ctx.domain = DomainSpec::unit_disc();
  ctx.sub = {1};
  ctx.green = {1, {}};
  return ctx;
}

SweepTable closed_form_table(double q, double s_from, double s_to, double step) {
  SweepTable t;
  t.q = q;
  for (double s = s_from; s <= s_to + 1e-12; s += step)
    t.rows.emplace_back(s, std::exp(-s) * oracle::disc_dual_es_closed(s, q));
  return t;
}

}  // namespace

TEST_CASE("log-convexity check") {
  SUBCASE("disc closed form is convex") {
    // second derivative of log v is (q-1)^2 u q / (q-u)^2 > 0, u = e^{(q-1)s}
    const auto table = closed_form_table(2.0, -10.0, 0.0, 0.5);
    const auto rep = check_log_convexity(table, 1e-9);
    CHECK(rep.status == CheckReport::Status::Pass);
    CHECK(rep.margin <= 1e-9);
  }
  SUBCASE("constant tables pass with equality") {
    SweepTable t;
    t.q = 0.0;
    for (double s = -5.0; s <= 0.0; s += 1.0) t.rows.emplace_back(s, 3.5);
    const auto rep = check_log_convexity(t, 1e-12);
    CHECK(rep.status == CheckReport::Status::Pass);
    CHECK(std::abs(rep.margin) <= 1e-12);
  }
  SUBCASE("a concave bump fails") {
    SweepTable t;
    t.rows = {{-2.0, 1.0}, {-1.0, 10.0}, {0.0, 1.0}};
    const auto rep = check_log_convexity(t, 1e-6);
    CHECK(rep.status == CheckReport::Status::Fail);
  }
  SUBCASE("nonpositive values violate the contract") {
    SweepTable t;
    t.rows = {{-2.0, 1.0}, {-1.0, -1.0}, {0.0, 1.0}};
    CHECK(check_log_convexity(t, 1e-6).status == CheckReport::Status::ContractViolation);
  }
}

TEST_CASE("monotone boundedness of e^s v(s)") {
  SUBCASE("disc closed form increases from pi/2 to pi") {
    const auto table = closed_form_table(2.0, -20.0, 0.0, 0.5);
    const auto rep = check_increasing_es(table, 1e-9);
    CHECK(rep.status == CheckReport::Status::Pass);
    const double first = std::exp(table.rows.front().first) * table.rows.front().second;
    const double last = std::exp(table.rows.back().first) * table.rows.back().second;
    CHECK(first == doctest::Approx(kPi / 2.0).epsilon(1e-6));
    CHECK(last == doctest::Approx(kPi).epsilon(1e-12));
  }
  SUBCASE("flat q=0 table passes with equality") {
    SweepTable t;
    t.q = 0.0;
    for (double s = -5.0; s <= 0.0; s += 1.0) t.rows.emplace_back(s, 2.0 * std::exp(-s));
    CHECK(check_increasing_es(t, 1e-12).status == CheckReport::Status::Pass);
  }
  SUBCASE("numeric q=3 closed form within 1e-5") {
    const auto table = closed_form_table(3.0, -12.0, 0.0, 0.5);
    CHECK(check_increasing_es(table, 1e-5).status == CheckReport::Status::Pass);
  }
  SUBCASE("a decreasing table fails") {
    SweepTable t;
    t.rows = {{-1.0, 10.0}, {0.0, 1.0}};
    CHECK(check_increasing_es(t, 1e-6).status == CheckReport::Status::Fail);
  }
}

TEST_CASE("exponential-kernel liminf bound") {
  const QuadratureConfig cfg;
  OneDFunction f;
  f.kind = OneDFunction::Kind::Exponential;
  f.a = 1.0;
  f.b = 1.0;

  SUBCASE("F = e^t, q = 2: H(s) = 1 - e^s tends to 1") {
    const double grid[] = {-20.0, -10.0, -5.0};
    const auto rep = check_kernel_limit(f, 1.0, 2.0, grid, cfg);
    CHECK(rep.status == CheckReport::Status::Pass);
    // oracle integrates the O(1)-scaled H integrand directly
    const double h = oracle::integrate([&](double t) {
      return std::exp(20.0 + t) * std::exp(-2.0 * (t + 20.0));
    }, -20.0, 0.0);
    // error bound at the grid floor: |H(s) - 1| = e^s <= 2 e^s
    CHECK(std::abs(h - 1.0) <= 2.0 * std::exp(-20.0));
    CHECK(oracle::rel_err(h, oracle::kernel_h_closed(-20.0, 2.0)) < 1e-10);
  }
  SUBCASE("q = 3 tends to 1/2") {
    const double grid[] = {-20.0};
    const auto rep = check_kernel_limit(f, 1.0, 3.0, grid, cfg);
    CHECK(rep.status == CheckReport::Status::Pass);
    CHECK(oracle::kernel_h_closed(-20.0, 3.0) == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("F = 0 passes trivially") {
    OneDFunction zero;
    zero.kind = OneDFunction::Kind::Polynomial;
    zero.coeffs = {};
    const double grid[] = {-10.0};
    CHECK(check_kernel_limit(zero, 1.0, 2.0, grid, cfg).status == CheckReport::Status::Pass);
  }
  SUBCASE("tabulated functions interpolate and integrate for the contract") {
    OneDFunction tab;
    tab.kind = OneDFunction::Kind::Tabulated;
    for (double t = -8.0; t <= 0.0 + 1e-12; t += 0.125) {
      tab.ts.push_back(t);
      tab.vals.push_back(std::exp(t));
    }
    CHECK(tab.value(-1.0625) ==
          doctest::Approx(0.5 * (std::exp(-1.0) + std::exp(-1.125))).epsilon(1e-6));
    CHECK(tab.value(-20.0) == 0.0);  // zero outside the table
    // the trapezoid mass of a convex sample overshoots e^s slightly, so the
    // growth contract needs a little headroom
    CHECK(tab.integral_to(-2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-3));
    const double grid[] = {-6.0, -4.0};
    const auto rep = check_kernel_limit(tab, 1.05, 2.0, grid, cfg, 1e-2);
    CHECK(rep.status == CheckReport::Status::Pass);
  }
  SUBCASE("growth contract violations are flagged") {
    OneDFunction big = f;
    big.a = 2.0;  // int = 2 e^s > C e^s for C = 1
    const double grid[] = {-10.0};
    CHECK(check_kernel_limit(big, 1.0, 2.0, grid, cfg).status ==
          CheckReport::Status::ContractViolation);
  }
  SUBCASE("q <= 1 is a contract violation") {
    const double grid[] = {-10.0};
    CHECK_THROWS_AS(check_kernel_limit(f, 1.0, 1.0, grid, cfg), ContractViolation);
  }
}

TEST_CASE("averaging inequality between window means") {
  const QuadratureConfig cfg;
  const double sg[] = {0.01, 0.05, 0.1};
  const double ug[] = {0.01, 0.05, 0.1};

  SUBCASE("constant P: both sides equal c") {
    OneDFunction p;
    p.kind = OneDFunction::Kind::Polynomial;
    p.coeffs = {2.5};
    const auto rep = check_averaging_inequality(p, ug, sg, cfg);
    CHECK(rep.status == CheckReport::Status::Pass);
    // RHS = c ln e = c exactly
    const double rhs = oracle::integrate([](double t) { return 2.5 / t; }, 0.05, kE * 0.05);
    CHECK(rhs == doctest::Approx(2.5).epsilon(1e-10));
  }
  SUBCASE("P(t) = t: LHS s/2 stays below RHS (e-1)u at matched scales") {
    OneDFunction p;
    p.kind = OneDFunction::Kind::Polynomial;
    p.coeffs = {0.0, 1.0};
    const auto rep = check_averaging_inequality(p, ug, sg, cfg);
    CHECK(rep.status == CheckReport::Status::Pass);
    const double lhs_min = 0.01 / 2.0;
    const double rhs_max = (kE - 1.0) * 0.1;
    CHECK(lhs_min <= rhs_max);
  }
  SUBCASE("P(t) = t^2: antiderivative identities") {
    OneDFunction p;
    p.kind = OneDFunction::Kind::Polynomial;
    p.coeffs = {0.0, 0.0, 1.0};
    const auto rep = check_averaging_inequality(p, ug, sg, cfg);
    CHECK(rep.status == CheckReport::Status::Pass);
    const double s = 0.1;
    const double lhs = oracle::integrate([](double t) { return t * t; }, 0.0, s) / s;
    CHECK(lhs == doctest::Approx(s * s / 3.0).epsilon(1e-10));
    const double rhs = oracle::integrate([](double t) { return t; }, s, kE * s);
    CHECK(rhs == doctest::Approx(s * s * (kE * kE - 1.0) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("comparison of shells against sublevel mass") {
  const QuadratureConfig cfg;
  const double ts[] = {-12.0, -16.0, -20.0};

  SUBCASE("h = z^{p-1}: both sides are pi and C = 1") {
    for (int p : {2, 3}) {
      const auto ctx = disc_context();
      const auto rep = check_compare_lemma(MultiIndex({p - 1}), ctx, p, -4.0, ts, cfg,
                                           1.0 + 1e-6);
      CHECK(oracle::rel_err(rep.shell_limsup, kPi) < 1e-9);
      CHECK(oracle::rel_err(rep.rhs_value, kPi) < 1e-9);
      CHECK(rep.smallest_c == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(rep.check.status == CheckReport::Status::Pass);
    }
  }
  SUBCASE("extra normal order kills the shells") {
    const auto ctx = disc_context();
    const auto rep = check_compare_lemma(MultiIndex({2}), ctx, 2, -4.0, ts, cfg, 5e-3);
    // |z^2|^2 e^{-2G} = 1: the shell integral is the shell area
    // pi e^t (e - 1), largest on the shallowest shell of the schedule
    const double area = kPi * std::exp(-12.0) * (std::exp(1.0) - 1.0);
    CHECK(oracle::rel_err(rep.shell_limsup, area) < 1e-9);
    CHECK(rep.check.status == CheckReport::Status::Pass);
  }
  SUBCASE("constant gamma moves C no further than the weight sandwich") {
    auto ctx = disc_context();
    ctx.green.gamma.kind = GammaSpec::Kind::Constant;
    ctx.green.gamma.c = -0.2;
    const int p = 2, k = 1;
    const double c_bound =
        std::exp((p + k - 1) * 0.2) * std::exp((p + k - 2) * 0.2) + 1e-6;
    const auto rep = check_compare_lemma(MultiIndex({1}), ctx, p, -4.0, ts, cfg, c_bound);
    CHECK(rep.check.status == CheckReport::Status::Pass);
  }
}

TEST_CASE("family norm decomposition ties the two limit lemmas together") {
  const auto ctx = disc_context();
  const QuadratureConfig cfg;
  const double grid[] = {-12.0, -8.0, -4.0};
  for (double q : {2.0, 5.0}) {
    const auto rep = check_family_norm_decomposition(ctx, 2, q, grid, cfg);
    CHECK(rep.partition_defect < 1e-9);
    CHECK(rep.jet_norm_sq == doctest::Approx(kPi).epsilon(1e-12));
    for (std::size_t i = 0; i < rep.s.size(); ++i) {
      // inner term is exactly pi on the disc; outer follows the 3.8 kernel
      CHECK(oracle::rel_err(rep.inner[i], kPi) < 1e-8);
      CHECK(oracle::rel_err(rep.outer[i], kPi * oracle::kernel_h_closed(rep.s[i], q)) < 1e-7);
      CHECK(oracle::rel_err(rep.total[i],
                            std::exp(-rep.s[i]) * oracle::disc_gram_family_closed(rep.s[i], q)) <
            1e-8);
    }
    CHECK(rep.c_estimate == doctest::Approx(kPi).epsilon(1e-7));
    CHECK(rep.bound_holds);
  }
}
