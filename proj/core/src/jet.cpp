#include "bjet/jet.hpp"

#include <string>

namespace bjet {

Complex eval_poly(const CoeffMap& coeffs, std::span<const Complex> z) {
  Complex acc{0.0, 0.0};
  for (const auto& [idx, c] : coeffs) acc += c * idx.evaluate(z);
  return acc;
}

namespace {

CoeffMap poly_multiply(const CoeffMap& a, const CoeffMap& b, int nvars) {
  CoeffMap out;
  for (const auto& [ia, ca] : a)
    for (const auto& [ib, cb] : b) {
      std::vector<int> e(static_cast<std::size_t>(nvars), 0);
      for (int i = 0; i < nvars; ++i) e[static_cast<std::size_t>(i)] = ia[i] + ib[i];
      out[MultiIndex(e)] += ca * cb;
    }
  return out;
}

}  // namespace

CoeffMap compose_linear(const CoeffMap& f, const MatrixXc& u) {
  const int k = static_cast<int>(u.rows());
  CoeffMap out;
  for (const auto& [idx, c] : f) {
    if (idx.size() != k) throw ContractViolation("compose_linear: index arity mismatch");
    std::vector<int> zero(static_cast<std::size_t>(k), 0);
    CoeffMap term{{MultiIndex(zero), c}};
    for (int i = 0; i < k; ++i) {
      CoeffMap linear;  // (U w)_i = sum_j u(i,j) w_j
      for (int j = 0; j < k; ++j) {
        if (u(i, j) == Complex{0.0, 0.0}) continue;
        std::vector<int> e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(j)] = 1;
        linear[MultiIndex(e)] = u(i, j);
      }
      for (int rep = 0; rep < idx[i]; ++rep) term = poly_multiply(term, linear, k);
    }
    for (const auto& [ti, tc] : term) out[ti] += tc;
  }
  return out;
}

int JetElement::degree() const {
  int deg = -1;
  for (const auto& [idx, c] : coeffs) {
    if (idx.size() != k) throw ContractViolation("jet element: index arity differs from k");
    if (deg < 0) deg = idx.total_degree();
    if (idx.total_degree() != deg)
      throw ContractViolation("jet element: coefficients are not homogeneous");
  }
  if (deg < 1) throw ContractViolation("jet element: needs degree p-1 >= 1 coefficients");
  return deg;
}

void JetElement::validate() const { (void)degree(); }

JetElement jet_element_scaled(const JetElement& e, Complex c) {
  JetElement out = e;
  for (auto& [idx, v] : out.coeffs) v *= c;
  return out;
}

JetElement jet_element_sum(const JetElement& a, const JetElement& b) {
  if (a.base_point != b.base_point)
    throw ContractViolation("jet element sum: base points differ");
  JetElement out = a;
  for (const auto& [idx, v] : b.coeffs) out.coeffs[idx] += v;
  return out;
}

void JetSection::validate() const {
  if (p < 2) throw ContractViolation("jet section: p must be >= 2");
  if (k < 1 || k > n) throw ContractViolation("jet section: need 1 <= k <= n");
  for (const auto& [normal, poly] : components) {
    if (normal.size() != k || normal.total_degree() != p - 1)
      throw ContractViolation("jet section: component index " + normal.str() +
                              " is not a normal index of degree p-1");
    for (const auto& [tang, c] : poly)
      if (tang.size() != n - k)
        throw ContractViolation("jet section: tangential index arity mismatch");
  }
}

bool JetSection::is_zero() const {
  for (const auto& [normal, poly] : components)
    for (const auto& [tang, c] : poly)
      if (c != Complex{0.0, 0.0}) return false;
  return true;
}

JetElement JetSection::at(std::span<const Complex> x) const {
  if (static_cast<int>(x.size()) != n - k)
    throw ContractViolation("jet section: base point has wrong dimension");
  JetElement e;
  e.base_point.assign(x.begin(), x.end());
  e.k = k;
  for (const auto& [normal, poly] : components) e.coeffs[normal] = eval_poly(poly, x);
  // keep zero-degree placeholder so element degree stays defined
  if (e.coeffs.empty())
    e.coeffs[homogeneous_multi_indices(k, p - 1).front()] = Complex{0.0, 0.0};
  return e;
}

int JetSection::tangential_degree() const {
  int d = 0;
  for (const auto& [normal, poly] : components)
    for (const auto& [tang, c] : poly) d = std::max(d, tang.total_degree());
  return d;
}

CoeffMap canonical_extension(const JetSection& s) {
  s.validate();
  CoeffMap out;
  for (const auto& [normal, poly] : s.components)
    for (const auto& [tang, c] : poly) {
      std::vector<int> e;
      e.reserve(static_cast<std::size_t>(s.n));
      e.insert(e.end(), normal.exponents().begin(), normal.exponents().end());
      e.insert(e.end(), tang.exponents().begin(), tang.exponents().end());
      out[MultiIndex(e)] += c;
    }
  return out;
}

}  // namespace bjet
