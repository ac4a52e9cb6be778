#ifndef BJET_LEMMA_LAB_HPP_
#define BJET_LEMMA_LAB_HPP_

#include <string>
#include <vector>

#include "bjet/quadrature.hpp"

namespace bjet {

/// Dual-norm sweep data consumed by the convexity/monotonicity checks.
struct SweepTable {
  std::vector<std::pair<double, double>> rows;  // (s, value), s strictly increasing
  double q = 0.0;
  std::string meta;
};

/// 1-D functions for the kernel and averaging lemmas.
struct OneDFunction {
  enum class Kind { Exponential, Polynomial, Tabulated };
  Kind kind = Kind::Exponential;
  double a = 1.0, b = 1.0;       // Exponential: a e^{b t} (b > 0)
  std::vector<double> coeffs;    // Polynomial: sum_i coeffs[i] t^i
  std::vector<double> ts, vals;  // Tabulated, linear interpolation, 0 outside

  double value(double t) const;
  /// int_{-inf}^{s}; +inf when divergent.
  double integral_to(double s) const;
};

struct CheckReport {
  enum class Status { Pass, Fail, ContractViolation };
  std::string name;
  Status status = Status::Pass;
  double margin = 0.0;   // worst signed violation; <= tol passes
  double witness = 0.0;  // grid point attaining the extremum
  std::string detail;
};

/// Midpoint/chord log-convexity of a positive sweep table.
CheckReport check_log_convexity(const SweepTable& table, double tol);

/// e^s v(s) nondecreasing and bounded; also the endpoint bound
/// v(s_top) >= e^{s_floor} v(s_floor).
CheckReport check_increasing_es(const SweepTable& table, double tol);

/// Kernel bound: min over the grid of H(s) = e^{-s} int_s^0 F(t) e^{-q(t-s)} dt
/// is at most C/(q-1), given the growth contract int_{-inf}^s F <= C e^s.
CheckReport check_kernel_limit(const OneDFunction& f, double c, double q,
                               std::span<const double> s_grid, const QuadratureConfig& cfg,
                               double tol = 1e-3);

/// Averaging bound: min over sGrid of (1/s) int_0^s P is at most
/// max over uGrid of int_u^{eu} P(t)/t dt.
CheckReport check_averaging_inequality(const OneDFunction& p, std::span<const double> u_grid,
                                       std::span<const double> s_grid,
                                       const QuadratureConfig& cfg, double tol = 1e-9);

struct CompareReport {
  CheckReport check;
  std::vector<std::pair<double, double>> shell_values;  // (t, value)
  double shell_limsup = 0.0;  // max over the schedule
  double rhs_value = 0.0;     // e^{-s} int_{G<s} |h|^2 e^{-phi-(p+k-2)G}
  double smallest_c = 0.0;
};

/// Shell/sublevel comparison for a normal monomial h at the origin slice;
/// emits the smallest constant making the bound hold.
CompareReport check_compare_lemma(const MultiIndex& h_normal, const ModelContext& ctx, int p,
                                  double s, std::span<const double> t_schedule,
                                  const QuadratureConfig& cfg, double c_bound);

struct DecompositionReport {
  std::vector<double> s;
  std::vector<double> inner;       // e^{-s} int_{G<s} |g'|^2 e^{-phi-(p+k-2)G}
  std::vector<double> outer;       // e^{-s} int_{G>=s} ... e^{-q psi}
  std::vector<double> total;       // e^{-s} ||g'||^2_{s,q}
  double partition_defect = 0.0;   // max |inner + outer - total| / total
  double jet_norm_sq = 0.0;        // ||g~||^2
  double c_estimate = 0.0;         // sup_s inner(s)
  double liminf_estimate = 0.0;    // min_s total(s)
  bool bound_holds = false;        // liminf <= jet_norm + C/(q-1) (+tol)
};

/// Splits e^{-s}||g'||^2_{s,q} for g' = z'^{p-1} into the sublevel and kernel
/// terms and checks the resulting limit bound.
DecompositionReport check_family_norm_decomposition(const ModelContext& ctx, int p, double q,
                                                    std::span<const double> s_grid,
                                                    const QuadratureConfig& cfg,
                                                    double tol = 1e-6);

}  // namespace bjet

#endif  // BJET_LEMMA_LAB_HPP_
