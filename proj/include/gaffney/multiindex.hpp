#pragma once

// Increasing multi-indices on {1,...,n} and the sign combinatorics of
// insertion/removal: sgn[i,I] is defined by dx^[iI] = sgn[i,I] dx^i ^ dx^I.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gaffney {

// Dimensions above this are refused everywhere; C(12,6) = 924 coefficients is
// the largest dense form this library is meant to handle.
inline constexpr int kMaxDimension = 12;

inline void check_dimension(int n) {
  if (n < 0 || n > kMaxDimension)
    throw std::domain_error("dimension n must be in [0, 12]");
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Strictly increasing tuple of indices in 1..n. The empty tuple (k = 0) is a
// regular value; it addresses the single coefficient of a 0-form.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices) : idx_(std::move(indices)) {
    for (std::size_t t = 0; t + 1 < idx_.size(); ++t)
      if (idx_[t] >= idx_[t + 1])
        throw std::domain_error("multi-index must be strictly increasing");
    if (!idx_.empty() && (idx_.front() < 1 || idx_.back() > kMaxDimension))
      throw std::domain_error("multi-index entries must lie in [1, 12]");
  }

  int rank() const { return static_cast<int>(idx_.size()); }
  int operator[](int t) const { return idx_[static_cast<std::size_t>(t)]; }
  const std::vector<int>& indices() const { return idx_; }

  bool contains(int i) const {
    return std::binary_search(idx_.begin(), idx_.end(), i);
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) = default;

 private:
  std::vector<int> idx_;
};

// All of T^k = { 1 <= i_1 < ... < i_k <= n } in lexicographic order.
inline std::vector<MultiIndex> enumerate(int n, int k) {
  check_dimension(n);
  if (k < 0 || k > n) throw std::domain_error("rank k must satisfy 0 <= k <= n");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) cur[static_cast<std::size_t>(t)] = t + 1;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  while (true) {
    out.emplace_back(cur);
    int t = k - 1;
    while (t >= 0 && cur[static_cast<std::size_t>(t)] == n - (k - 1 - t)) --t;
    if (t < 0) break;
    ++cur[static_cast<std::size_t>(t)];
    for (int s = t + 1; s < k; ++s)
      cur[static_cast<std::size_t>(s)] = cur[static_cast<std::size_t>(s - 1)] + 1;
  }
  return out;
}

// Lexicographic position of I within T^k (the only 0-based offset map).
inline std::int64_t lex_position(const MultiIndex& I, int n) {
  const int k = I.rank();
  std::int64_t pos = 0;
  int prev = 0;
  for (int t = 0; t < k; ++t) {
    for (int j = prev + 1; j < I[t]; ++j) pos += binomial(n - j, k - 1 - t);
    prev = I[t];
  }
  return pos;
}

// Inserts i into I, returning (sgn[i,I], [iI]).  sgn[i,I] = (-1)^p with p the
// number of entries of I smaller than i.
inline std::pair<int, MultiIndex> sign_insert(int i, const MultiIndex& I) {
  if (I.contains(i)) throw std::domain_error("sign_insert: index already present");
  if (i < 1 || i > kMaxDimension) throw std::domain_error("sign_insert: index out of range");
  std::vector<int> v = I.indices();
  auto it = std::lower_bound(v.begin(), v.end(), i);
  const int p = static_cast<int>(it - v.begin());
  v.insert(it, i);
  return {(p % 2 == 0) ? 1 : -1, MultiIndex(std::move(v))};
}

// Removes i from I, returning (sgn[i, I_without_i], I_without_i); the exact
// inverse of sign_insert.
inline std::pair<int, MultiIndex> remove(const MultiIndex& I, int i) {
  std::vector<int> v = I.indices();
  auto it = std::lower_bound(v.begin(), v.end(), i);
  if (it == v.end() || *it != i) throw std::domain_error("remove: index not present");
  const int p = static_cast<int>(it - v.begin());
  v.erase(it);
  return {(p % 2 == 0) ? 1 : -1, MultiIndex(std::move(v))};
}

// sgn[i,j,I], defined by dx^[ijI] = sgn[i,j,I] dx^i ^ dx^j ^ dx^I.
inline int sign_insert2(int i, int j, const MultiIndex& I) {
  auto [sj, jI] = sign_insert(j, I);
  auto [si, ijI] = sign_insert(i, jI);
  (void)ijI;
  return si * sj;
}

// Sign of the permutation sorting `v` ascending; 0 if any entry repeats.
inline int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) return 0;
      if (v[a] > v[b]) sign = -sign;
    }
  return sign;
}

}  // namespace gaffney
