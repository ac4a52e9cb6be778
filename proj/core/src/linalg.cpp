#include "bjet/linalg.hpp"

#include <cmath>
#include <string>

namespace bjet {

CholeskyFactor::CholeskyFactor(const MatrixXc& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ContractViolation("cholesky: matrix must be square");
  l_ = MatrixXc::Zero(n, n);
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    std::complex<double> diag = a(j, j);
    for (Eigen::Index p = 0; p < j; ++p) diag -= l_(j, p) * std::conj(l_(j, p));
    const double d = diag.real();
    if (!(d > 0.0) || !std::isfinite(d))
      throw ConditioningError(
          "cholesky: non-positive pivot " + std::to_string(d) + " at index " + std::to_string(j),
          static_cast<int>(j));
    const double root = std::sqrt(d);
    min_pivot_ = std::min(min_pivot_, d);
    l_(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      std::complex<double> v = a(i, j);
      for (Eigen::Index p = 0; p < j; ++p) v -= l_(i, p) * std::conj(l_(j, p));
      l_(i, j) = v / root;
    }
  }
}

VectorXc CholeskyFactor::solve(const VectorXc& b) const {
  VectorXc y = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.adjoint().triangularView<Eigen::Upper>().solve(y);
}

double CholeskyFactor::inverse_quadratic_form(const VectorXc& b) const {
  const VectorXc y = l_.triangularView<Eigen::Lower>().solve(b);
  return y.squaredNorm();
}

}  // namespace bjet
