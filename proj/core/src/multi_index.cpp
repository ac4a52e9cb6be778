#include "bjet/multi_index.hpp"

#include <algorithm>

namespace bjet {

namespace {

void emit_degree(int n, int degree, std::vector<int>& scratch, int pos, int remaining,
                 std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    scratch[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(scratch);
    return;
  }
  // z1 heaviest first matches the grlex comparator
  for (int e = remaining; e >= 0; --e) {
    scratch[static_cast<std::size_t>(pos)] = e;
    emit_degree(n, degree, scratch, pos + 1, remaining - e, out);
  }
}

}  // namespace

std::vector<MultiIndex> homogeneous_multi_indices(int n, int degree) {
  if (n <= 0) {
    if (degree == 0) return {MultiIndex(std::vector<int>{})};
    return {};
  }
  std::vector<MultiIndex> out;
  std::vector<int> scratch(static_cast<std::size_t>(n), 0);
  emit_degree(n, degree, scratch, 0, degree, out);
  return out;
}

std::vector<MultiIndex> enumerate_multi_indices(int n, int min_deg, int max_deg) {
  std::vector<MultiIndex> out;
  for (int d = std::max(0, min_deg); d <= max_deg; ++d) {
    auto layer = homogeneous_multi_indices(n, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace bjet
