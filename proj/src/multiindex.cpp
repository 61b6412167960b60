#include "focklab/multiindex.hpp"

#include <string>

#include "focklab/errors.hpp"
#include "focklab/special.hpp"

namespace focklab {

namespace {

void check_range(int n, int max_degree) {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("n", "complex dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
  if (max_degree < 0 || max_degree > kMaxDegree)
    throw PreconditionError("degree", "truncation degree must be between 0 and " +
                                          std::to_string(kMaxDegree));
}

// within a fixed total degree, descending lexicographic successor;
// returns false when the block is exhausted
bool next_in_block(MultiIndex& idx) {
  const int n = idx.n;
  if (n == 1) return false;
  // find the rightmost position (excluding the last) with a nonzero entry
  for (int j = n - 2; j >= 0; --j) {
    if (idx.m[j] == 0) continue;
    // decrement position j, collect everything to its right (plus one)
    // into position j+1, zero the rest
    std::uint16_t rest = 1;
    for (int k = j + 1; k < n; ++k) {
      rest += idx.m[k];
      idx.m[k] = 0;
    }
    idx.m[j] -= 1;
    idx.m[j + 1] = rest;
    return true;
  }
  return false;
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(int n, int max_degree) {
  check_range(n, max_degree);
  std::vector<MultiIndex> out;
  out.reserve(multiindex_count(n, max_degree));
  for (int d = 0; d <= max_degree; ++d) {
    MultiIndex idx;
    idx.n = static_cast<std::uint8_t>(n);
    idx.m[0] = static_cast<std::uint16_t>(d);
    out.push_back(idx);
    while (next_in_block(idx)) out.push_back(idx);
  }
  return out;
}

std::size_t multiindex_count(int n, int max_degree) {
  check_range(n, max_degree);
  return static_cast<std::size_t>(special::binomial(max_degree + n, n));
}

double log_multiindex_factorial(const MultiIndex& m) {
  double s = 0.0;
  for (int j = 0; j < m.n; ++j) s += special::log_factorial(m.m[j]);
  return s;
}

std::uint64_t basis_order_hash(const std::vector<MultiIndex>& basis) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const auto& idx : basis) {
    mix(idx.n);
    for (int j = 0; j < idx.n; ++j) mix(idx.m[j]);
  }
  return h;
}

}  // namespace focklab
