#ifndef BJET_TESTS_ORACLES_HPP_
#define BJET_TESTS_ORACLES_HPP_

// Test-only oracles, independent of the library's quadrature path: an
// adaptive Simpson integrator and the disc closed forms used as frozen
// expected values. Each closed form is cross-checked against the Simpson
// oracle inside the tests before being asserted against the implementation.

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

namespace detail {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Radial disc integral of the (s, q) family weight against |z|^2 |z|^{-2}:
/// the (alpha = p-1, alpha = p-1) Gram entry on the unit disc with phi = 0,
/// gamma = 0, any p (in u = log|z|^2 coordinates the entry is p-independent).
inline double disc_gram_family_quadrature(double s, double q, double floor = -60.0) {
  return kPi * integrate(
                   [s, q](double u) { return std::exp(u - q * std::max(u - s, 0.0)); },
                   floor, 0.0, 1e-14);
}

/// Closed form of the same entry: pi e^s (1 + (1 - e^{(q-1)s}) / (q-1)).
inline double disc_gram_family_closed(double s, double q) {
  return kPi * std::exp(s) * (1.0 + (1.0 - std::exp((q - 1.0) * s)) / (q - 1.0));
}

/// e^s ||xi||^2_{s,q} on the disc: pi (q-1) / (q - e^{(q-1)s}).
inline double disc_dual_es_closed(double s, double q) {
  return kPi * (q - 1.0) / (q - std::exp((q - 1.0) * s));
}

/// Kernel H(s) = e^{-s} int_s^0 e^t e^{-q(t-s)} dt = (1 - e^{(q-1)s})/(q-1).
inline double kernel_h_closed(double s, double q) {
  return (1.0 - std::exp((q - 1.0) * s)) / (q - 1.0);
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace oracle

#endif  // BJET_TESTS_ORACLES_HPP_
