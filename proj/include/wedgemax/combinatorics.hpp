#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wedgemax/rational.hpp"

namespace wedgemax {

/// Strictly increasing tuple of 1-based basis indices; e_I = e_{i1} ^ ... ^ e_{ir}.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      if (indices_[j] < 1) {
        throw std::invalid_argument("MultiIndex: index " + std::to_string(indices_[j]) +
                                    " at position " + std::to_string(j) + " is below 1");
      }
      if (j > 0 && indices_[j - 1] >= indices_[j]) {
        throw std::invalid_argument("MultiIndex: not strictly increasing at position " +
                                    std::to_string(j));
      }
    }
  }

  MultiIndex(std::initializer_list<int> indices) : MultiIndex(std::vector<int>(indices)) {}

  int degree() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  std::span<const int> indices() const { return indices_; }
  int operator[](std::size_t j) const { return indices_[j]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(int index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
  }

  /// True when every index lies in 1..2n.
  bool fits(int n) const { return indices_.empty() || indices_.back() <= 2 * n; }

  /// True when this is the expansion (2i-1, 2i, ...) of a PairSet.
  bool is_paired() const {
    if (indices_.size() % 2 != 0) return false;
    for (std::size_t j = 0; j < indices_.size(); j += 2) {
      if (indices_[j] % 2 == 0 || indices_[j + 1] != indices_[j] + 1) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(indices_[j]);
    }
    return out + ")";
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<int> indices_;
};

/// Pair slots i1 < ... < ik in 1..n, standing for t_{i1} ^ ... ^ t_{ik} with t_i = e_{2i-1} ^ e_{2i}.
class PairSet {
 public:
  PairSet() = default;

  explicit PairSet(std::vector<int> pairs) : pairs_(std::move(pairs)) {
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
      if (pairs_[j] < 1 || (j > 0 && pairs_[j - 1] >= pairs_[j])) {
        throw std::invalid_argument("PairSet: slots must be strictly increasing and >= 1");
      }
    }
  }

  PairSet(std::initializer_list<int> pairs) : PairSet(std::vector<int>(pairs)) {}

  int size() const { return static_cast<int>(pairs_.size()); }
  std::span<const int> pairs() const { return pairs_; }

  MultiIndex expand() const {
    std::vector<int> out;
    out.reserve(2 * pairs_.size());
    for (int i : pairs_) {
      out.push_back(2 * i - 1);
      out.push_back(2 * i);
    }
    return MultiIndex(std::move(out));
  }

  static std::optional<PairSet> from_multi_index(const MultiIndex& index) {
    if (!index.is_paired()) return std::nullopt;
    std::vector<int> pairs;
    for (int j = 0; j < index.degree(); j += 2) pairs.push_back((index[j] + 1) / 2);
    return PairSet(std::move(pairs));
  }

  friend bool operator==(const PairSet&, const PairSet&) = default;
  friend auto operator<=>(const PairSet& a, const PairSet& b) { return a.pairs_ <=> b.pairs_; }

 private:
  std::vector<int> pairs_;
};

/// Exact C(n, k); zero outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n = " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

namespace detail {

// Visits every strictly increasing tuple of `size` values drawn from 1..universe, lexicographically.
template <typename Visitor>
void for_each_combination(int universe, int size, Visitor&& visit) {
  if (size < 0 || size > universe) return;
  std::vector<int> current(size);
  for (int j = 0; j < size; ++j) current[j] = j + 1;
  while (true) {
    visit(std::as_const(current));
    int j = size - 1;
    while (j >= 0 && current[j] == universe - size + j + 1) --j;
    if (j < 0) return;
    ++current[j];
    for (int m = j + 1; m < size; ++m) current[m] = current[m - 1] + 1;
  }
}

}  // namespace detail

/// All of P(2n, degree) in lexicographic order.
inline std::vector<MultiIndex> enumerate_full(int n, int degree) {
  if (n < 0 || degree < 0 || degree > 2 * n) {
    throw std::invalid_argument("enumerate_full: need 0 <= degree <= 2n");
  }
  std::vector<MultiIndex> out;
  detail::for_each_combination(2 * n, degree,
                               [&](const std::vector<int>& c) { out.emplace_back(c); });
  return out;
}

/// PR(n, k): all PairSets of size k, lexicographic.
inline std::vector<PairSet> enumerate_paired(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("enumerate_paired: need 0 <= k <= n");
  std::vector<PairSet> out;
  detail::for_each_combination(n, k, [&](const std::vector<int>& c) { out.emplace_back(c); });
  return out;
}

/// Slots i such that both 2i-1 and 2i appear in `index`.
inline std::vector<int> contained_pairs(const MultiIndex& index) {
  std::vector<int> slots;
  for (int j = 0; j + 1 < index.degree(); ++j) {
    if (index[j] % 2 == 1 && index[j + 1] == index[j] + 1) slots.push_back((index[j] + 1) / 2);
  }
  return slots;
}

/// PR(T, k): size-k PairSets whose expansion lies inside T, lexicographic.
inline std::vector<PairSet> enumerate_paired_within(const MultiIndex& within, int k) {
  if (within.degree() % 2 != 0) {
    throw std::invalid_argument("enumerate_paired_within: T must have even degree");
  }
  const std::vector<int> slots = contained_pairs(within);
  std::vector<PairSet> out;
  if (k < 0) return out;
  detail::for_each_combination(static_cast<int>(slots.size()), k, [&](const std::vector<int>& c) {
    std::vector<int> pairs;
    pairs.reserve(c.size());
    for (int j : c) pairs.push_back(slots[j - 1]);
    out.emplace_back(std::move(pairs));
  });
  return out;
}

enum class IndexSetKind { kFull, kPaired, kPairedWithin };

/// Generic front end returning index tuples; `degree` is the tuple length (2k for paired kinds).
inline std::vector<MultiIndex> enumerate_index_sets(int n, int degree, IndexSetKind kind,
                                                    const MultiIndex& within = {}) {
  if (kind == IndexSetKind::kFull) return enumerate_full(n, degree);
  if (degree % 2 != 0) {
    throw std::invalid_argument("enumerate_index_sets: paired kinds need an even degree, got " +
                                std::to_string(degree));
  }
  std::vector<PairSet> pairs = kind == IndexSetKind::kPaired
                                   ? enumerate_paired(n, degree / 2)
                                   : enumerate_paired_within(within, degree / 2);
  std::vector<MultiIndex> out;
  out.reserve(pairs.size());
  for (const PairSet& p : pairs) out.push_back(p.expand());
  return out;
}

struct MergeResult {
  int sign = 0;  // +1, -1, or 0 when I and J overlap
  MultiIndex merged;
};

/// e_I ^ e_J = sign * e_{I u J}.
inline MergeResult merge_sign(const MultiIndex& left, const MultiIndex& right) {
  std::vector<int> merged;
  merged.reserve(left.degree() + right.degree());
  long inversions = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  const auto lhs = left.indices();
  const auto rhs = right.indices();
  while (a < lhs.size() || b < rhs.size()) {
    if (b == rhs.size() || (a < lhs.size() && lhs[a] < rhs[b])) {
      merged.push_back(lhs[a++]);
    } else if (a == lhs.size() || rhs[b] < lhs[a]) {
      // every remaining element of `left` jumps over rhs[b]
      inversions += static_cast<long>(lhs.size() - a);
      merged.push_back(rhs[b++]);
    } else {
      return {};
    }
  }
  return {inversions % 2 == 0 ? 1 : -1, MultiIndex(std::move(merged))};
}

/// T \ I, order-preserving. Throws when I is not contained in T.
inline MultiIndex complement(const MultiIndex& whole, const MultiIndex& part) {
  std::vector<int> out;
  out.reserve(whole.degree());
  std::size_t b = 0;
  const auto sub = part.indices();
  for (int x : whole) {
    if (b < sub.size() && sub[b] == x) {
      ++b;
    } else {
      if (b < sub.size() && sub[b] < x) break;
      out.push_back(x);
    }
  }
  if (b != sub.size()) {
    throw std::invalid_argument("complement: " + part.to_string() + " is not contained in " +
                                whole.to_string());
  }
  return MultiIndex(std::move(out));
}

inline int intersection_size(const MultiIndex& a, const MultiIndex& b) {
  int count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.indices().size() && j < b.indices().size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

inline bool is_subset(const MultiIndex& part, const MultiIndex& whole) {
  return intersection_size(part, whole) == part.degree();
}

/// f(T): number of complete pairs (2i-1, 2i) inside T.
inline int paired_pair_count(const MultiIndex& index, int n) {
  if (!index.fits(n)) {
    throw std::invalid_argument("paired_pair_count: " + index.to_string() + " exceeds 2n = " +
                                std::to_string(2 * n));
  }
  return static_cast<int>(contained_pairs(index).size());
}

/// Lexicographic basis of an exterior power (or a subspace of one) with O(log N) rank lookup.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<MultiIndex> elements) : elements_(std::move(elements)) {
    for (std::size_t j = 0; j < elements_.size(); ++j) rank_.emplace(elements_[j], j);
  }

  static Basis full(int n, int degree) { return Basis(enumerate_full(n, degree)); }
  static Basis paired(int n, int k) {
    return Basis(enumerate_index_sets(n, 2 * k, IndexSetKind::kPaired));
  }

  std::size_t size() const { return elements_.size(); }
  const MultiIndex& operator[](std::size_t j) const { return elements_[j]; }
  const std::vector<MultiIndex>& elements() const { return elements_; }

  std::optional<std::size_t> rank(const MultiIndex& index) const {
    auto it = rank_.find(index);
    if (it == rank_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<MultiIndex> elements_;
  std::map<MultiIndex, std::size_t> rank_;
};

/// Closed-form count next to its exhaustive enumeration (when affordable).
struct CountWitness {
  int n = 0;
  int k = 0;
  int l = 0;
  int t = 0;
  std::optional<int> phi;  // set for the complement-side (eta in C_l) count
  Integer formula_value;
  std::optional<Integer> enumerated_value;
  std::string note;

  bool verified() const { return enumerated_value.has_value(); }
  bool agrees() const { return !enumerated_value || *enumerated_value == formula_value; }
};

/// Enumeration is skipped above this many candidate T.
inline constexpr long kEnumerationCap = 1'000'000;

namespace detail {

inline bool enumeration_affordable(int n, int k, int l) {
  return binomial(2 * n, 2 * (k + l)) <= kEnumerationCap;
}

inline MultiIndex slots_to_index(const std::vector<int>& slots) {
  std::vector<int> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  return PairSet(std::move(sorted)).expand();
}

}  // namespace detail

/// Number of T that complete a fixed (I, J) in the relative position the proofs use.
///
/// Without `phi`: I in PR(n,k), J in PR(n,l) with |I n J| = 2k-2t; counts T in PR(n,k+l)
/// containing both; closed form C(n-l-t, k-t).
///
/// With `phi`: u in PR(n,k), v outside PR(n,l) with f(v) = phi, u n v in PR(n,k-t); counts
/// T = v u u2 (u2 in PR(n,k), |u n u2| = 2t, T outside PR(n,k+l), f(T) = k+phi), i.e. the
/// multiplicity of a_u^2 b_v^2 in the T-sum; closed form C(n-phi-t, k-t).
inline CountWitness count_supersets(int n, int k, int l, int t, std::optional<int> phi = {}) {
  if (k < 1 || k > l || k + l > n) {
    throw std::invalid_argument("count_supersets: need 1 <= k <= l and k + l <= n");
  }
  if (t < 0 || t > k - 1) throw std::invalid_argument("count_supersets: need 0 <= t <= k-1");
  if (phi && (*phi < 0 || *phi > l - 1 || *phi + t < k)) {
    throw std::invalid_argument("count_supersets: need 0 <= phi <= l-1 and phi + t >= k");
  }

  CountWitness w{n, k, l, t, phi, 0, std::nullopt, {}};
  if (!phi) {
    w.formula_value = binomial(n - l - t, k - t);
    if (!detail::enumeration_affordable(n, k, l)) {
      w.note = "enumeration skipped above cap";
      return w;
    }
    // I = slots 1..k, J = slots t+1..t+l share exactly k-t slots.
    std::vector<int> i_slots;
    std::vector<int> j_slots;
    for (int s = 1; s <= k; ++s) i_slots.push_back(s);
    for (int s = t + 1; s <= t + l; ++s) j_slots.push_back(s);
    const MultiIndex I = detail::slots_to_index(i_slots);
    const MultiIndex J = detail::slots_to_index(j_slots);
    Integer count = 0;
    for (const PairSet& candidate : enumerate_paired(n, k + l)) {
      const MultiIndex T = candidate.expand();
      if (is_subset(I, T) && is_subset(J, T)) ++count;
    }
    w.enumerated_value = count;
    return w;
  }

  const int f = *phi;
  w.formula_value = binomial(n - f - t, k - t);
  // v: full pairs at slots 1..phi, one lone odd index in each of slots phi+1..2l-phi.
  // u: k-t of v's full pairs plus t fresh slots after 2l-phi.
  if (2 * l - f + t > n) {
    w.note = "no (u, v) in the required position fits in n";
    return w;
  }
  if (!detail::enumeration_affordable(n, k, l)) {
    w.note = "enumeration skipped above cap";
    return w;
  }
  std::vector<int> v_indices;
  for (int s = 1; s <= f; ++s) {
    v_indices.push_back(2 * s - 1);
    v_indices.push_back(2 * s);
  }
  for (int s = f + 1; s <= 2 * l - f; ++s) v_indices.push_back(2 * s - 1);
  const MultiIndex v(v_indices);
  std::vector<int> u_slots;
  for (int s = 1; s <= k - t; ++s) u_slots.push_back(s);
  for (int s = 2 * l - f + 1; s <= 2 * l - f + t; ++s) u_slots.push_back(s);
  const MultiIndex u = detail::slots_to_index(u_slots);

  Integer count = 0;
  detail::for_each_combination(2 * n, 2 * (k + l), [&](const std::vector<int>& c) {
    const MultiIndex T(c);
    if (T.is_paired() || paired_pair_count(T, n) != k + f) return;
    if (!is_subset(v, T) || !is_subset(u, T)) return;
    const MultiIndex u2 = complement(T, v);
    if (u2.is_paired() && intersection_size(u, u2) == 2 * t) ++count;
  });
  w.enumerated_value = count;
  return w;
}

struct IdentityCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass() const { return lhs == rhs; }
};

struct IdentityReport {
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<IdentityCheck> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass(); });
  }
};

/// The two Vandermonde convolutions and the weighted sum they combine into, all exact.
inline IdentityReport vandermonde_identities(int n, int k, int l) {
  if (k < 0 || k > l || k + l > n) {
    throw std::invalid_argument("vandermonde_identities: need k <= l and k + l <= n");
  }
  IdentityReport report{n, k, l, {}};

  Rational pair_sum = 0;
  for (int t = 0; t <= k; ++t) pair_sum += Rational(binomial(k, t) * binomial(l, k - t));
  report.checks.push_back({"sum_t C(k,t)C(l,k-t) = C(k+l,k)", pair_sum, Rational(binomial(k + l, k))});

  Rational split_sum = 0;
  for (int t = 0; t <= k; ++t) split_sum += Rational(binomial(k, t) * binomial(n - k, n - l - t));
  report.checks.push_back({"sum_t C(k,t)C(n-k,n-l-t) = C(n,l)", split_sum, Rational(binomial(n, l))});

  const Integer top = binomial(k + l, k) * binomial(n - l, k);
  Rational weighted = 0;
  for (int t = 0; t <= k - 1; ++t) {
    const Rational weight = Rational(top) / Rational(binomial(n, k) * binomial(n - l - t, k - t));
    weighted += Rational(binomial(k, t) * binomial(l, k - t)) * (1 - weight);
  }
  const Rational closed = Rational(binomial(n - l, k) * binomial(k + l, k) - binomial(n, k)) /
                          Rational(binomial(n, k));
  report.checks.push_back({"sum_t C(k,t)C(l,k-t)(1-alpha(t)) = (C(n-l,k)C(k+l,k)-C(n,k))/C(n,k)",
                           weighted, closed});
  return report;
}

}  // namespace wedgemax
