#ifndef BJET_JET_HPP_
#define BJET_JET_HPP_

#include <map>

#include "bjet/geometry.hpp"
#include "bjet/linalg.hpp"
#include "bjet/multi_index.hpp"

namespace bjet {

/// Sparse polynomial: multi-index -> coefficient.
using CoeffMap = std::map<MultiIndex, Complex>;

Complex eval_poly(const CoeffMap& coeffs, std::span<const Complex> z);

/// f(U w) for a polynomial f in k variables and a k x k matrix U.
CoeffMap compose_linear(const CoeffMap& f, const MatrixXc& u);

/// Element of the jet fiber at a base point: a homogeneous polynomial of
/// degree p-1 in the normal variables.
struct JetElement {
  PointCn base_point;  // tangential coordinates of x (size n-k)
  int k = 1;
  CoeffMap coeffs;  // normal indices, all of total degree p-1

  /// p-1; throws if the coefficients are not homogeneous.
  int degree() const;
  int jet_order() const { return degree() + 1; }
  void validate() const;
};

JetElement jet_element_scaled(const JetElement& e, Complex c);
JetElement jet_element_sum(const JetElement& a, const JetElement& b);

/// Holomorphic section of the jet bundle: for each normal index of degree
/// p-1, a polynomial in the tangential variables.
struct JetSection {
  int n = 1;
  int k = 1;
  int p = 2;
  std::map<MultiIndex, CoeffMap> components;  // normal index -> tangential poly

  void validate() const;
  bool is_zero() const;
  JetElement at(std::span<const Complex> x) const;
  /// Max tangential degree across components.
  int tangential_degree() const;
};

/// The canonical polynomial extension sum_a z'^a * poly_a(z'') as a
/// coefficient map over full ambient multi-indices.
CoeffMap canonical_extension(const JetSection& s);

}  // namespace bjet

#endif  // BJET_JET_HPP_
