#ifndef BJET_LINALG_HPP_
#define BJET_LINALG_HPP_

#include <Eigen/Dense>
#include <complex>

#include "bjet/errors.hpp"

namespace bjet {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Hermitian Cholesky A = L L^* without regularization. A failing pivot is
/// surfaced with its index rather than jittered away.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const MatrixXc& a);

  const MatrixXc& matrix_l() const { return l_; }
  double min_pivot() const { return min_pivot_; }

  VectorXc solve(const VectorXc& b) const;

  /// b^* A^{-1} b (real for Hermitian positive definite A).
  double inverse_quadratic_form(const VectorXc& b) const;

 private:
  MatrixXc l_;
  double min_pivot_ = 0.0;
};

}  // namespace bjet

#endif  // BJET_LINALG_HPP_
