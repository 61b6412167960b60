#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

// Multi-indices m = (m_1, ..., m_n) labelling the monomial basis of the
// holomorphic function spaces.  The canonical enumeration is graded
// lexicographic: ascending total degree |m|, and inside one degree block
// lexicographically descending entries, so (d,0,...,0) comes first and
// (0,...,0,d) last.  All truncations and matrix layouts use this order.

namespace focklab {

inline constexpr int kMaxComplexDim = 3;   // n beyond 3 is out of scope
inline constexpr int kMaxDegree = 60;      // degree cap for truncations

struct MultiIndex {
  std::array<std::uint16_t, kMaxComplexDim> m{};
  std::uint8_t n = 1;

  int order() const {
    int s = 0;
    for (int j = 0; j < n; ++j) s += m[j];
    return s;
  }
  std::uint16_t operator[](int j) const { return m[j]; }
  bool operator==(const MultiIndex&) const = default;
};

// All multi-indices with |m| <= max_degree in graded-lex order.
// Throws PreconditionError for n or max_degree outside the supported range.
std::vector<MultiIndex> enumerate_multiindices(int n, int max_degree);

// Number of multi-indices with |m| <= max_degree: binomial(max_degree + n, n).
std::size_t multiindex_count(int n, int max_degree);

// log(m!) = sum_j log(m_j!)
double log_multiindex_factorial(const MultiIndex& m);

// FNV-1a hash over the enumeration, recorded next to exported matrices so a
// reader can verify the basis layout assumption.
std::uint64_t basis_order_hash(const std::vector<MultiIndex>& basis);

}  // namespace focklab
