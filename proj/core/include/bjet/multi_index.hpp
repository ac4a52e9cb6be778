#ifndef BJET_MULTI_INDEX_HPP_
#define BJET_MULTI_INDEX_HPP_

#include <compare>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bjet/errors.hpp"

namespace bjet {

/// Exponent tuple of a monomial z^alpha in n complex variables. The first k
/// entries are the normal directions (vanishing on S), the rest tangential.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
      if (v < 0) throw ContractViolation("MultiIndex: negative exponent");
  }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return e_; }

  int total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  int normal_degree(int k) const {
    int d = 0;
    for (int i = 0; i < k && i < size(); ++i) d += e_[static_cast<std::size_t>(i)];
    return d;
  }

  int tangential_degree(int k) const { return total_degree() - normal_degree(k); }

  MultiIndex normal_part(int k) const {
    return MultiIndex(std::vector<int>(e_.begin(), e_.begin() + k));
  }
  MultiIndex tangential_part(int k) const {
    return MultiIndex(std::vector<int>(e_.begin() + k, e_.end()));
  }

  // graded lexicographic: degree first, then lex with z1 heaviest
  std::strong_ordering operator<=>(const MultiIndex& other) const {
    if (auto c = total_degree() <=> other.total_degree(); c != 0) return c;
    for (std::size_t i = 0; i < e_.size() && i < other.e_.size(); ++i) {
      if (e_[i] != other.e_[i]) return other.e_[i] <=> e_[i];
    }
    return e_.size() <=> other.e_.size();
  }
  bool operator==(const MultiIndex& other) const { return e_ == other.e_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  /// z^alpha at a point
  std::complex<double> evaluate(std::span<const std::complex<double>> z) const {
    std::complex<double> v{1.0, 0.0};
    for (std::size_t i = 0; i < e_.size(); ++i)
      for (int p = 0; p < e_[i]; ++p) v *= z[i];
    return v;
  }

  /// alpha! as a double (exponents stay small here)
  double factorial() const {
    double f = 1.0;
    for (int v : e_)
      for (int j = 2; j <= v; ++j) f *= j;
    return f;
  }

 private:
  std::vector<int> e_;
};

/// All multi-indices in `n` variables with total degree in [min_deg, max_deg],
/// in graded lexicographic order.
std::vector<MultiIndex> enumerate_multi_indices(int n, int min_deg, int max_deg);

/// All multi-indices of exactly the given degree (graded-lex within degree).
std::vector<MultiIndex> homogeneous_multi_indices(int n, int degree);

}  // namespace bjet

#endif  // BJET_MULTI_INDEX_HPP_
