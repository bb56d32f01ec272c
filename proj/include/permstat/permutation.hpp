#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/error.hpp"

namespace permstat {

using Position = std::size_t;        // 1-based
using PositionSet = std::vector<Position>;  // sorted ascending

// A permutation of 1..n in one-line notation. Positions exposed through the
// public interface are 1-based; `word()` is the raw 0-indexed storage.
class Permutation {
 public:
  // Validating constructor; see make_permutation.
  explicit Permutation(std::vector<int> word);

  static Permutation identity(std::size_t n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    return Permutation(std::move(w), Unchecked{});
  }

  std::size_t size() const noexcept { return word_.size(); }

  // Entry at 1-based position `pos`.
  int at(Position pos) const {
    if (pos < 1 || pos > word_.size())
      throw InvalidArgument("position " + std::to_string(pos) + " out of range 1.." +
                            std::to_string(word_.size()));
    return word_[pos - 1];
  }
  int operator()(Position pos) const noexcept { return word_[pos - 1]; }

  std::span<const int> word() const noexcept { return word_; }

  // Digit string for n <= 9, comma-separated otherwise.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.word_ <=> b.word_;
  }

  // Skips validation; for callers that construct permutations by a method
  // that guarantees the rearrangement invariant.
  struct Unchecked {};
  Permutation(std::vector<int> word, Unchecked) noexcept : word_(std::move(word)) {}

 private:
  std::vector<int> word_;
};

namespace detail {

inline void validate_word(std::span<const int> word) {
  if (word.empty()) throw InvalidArgument("permutation must be non-empty");
  const auto n = static_cast<long long>(word.size());
  std::vector<bool> seen(word.size() + 1, false);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const long long v = word[i];
    const std::string where = " at position " + std::to_string(i + 1);
    if (v < 1) throw InvalidArgument("invalid entry " + std::to_string(v) + where + " (entries start at 1)");
    if (v > n)
      throw InvalidArgument("entry " + std::to_string(v) + where + " exceeds length " + std::to_string(n));
    if (seen[v]) throw InvalidArgument("duplicate value " + std::to_string(v) + where);
    seen[v] = true;
  }
}

}  // namespace detail

inline Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  detail::validate_word(word_);
}

inline std::string Permutation::to_string() const {
  std::string out;
  const bool digits = word_.size() <= 9;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

inline Permutation make_permutation(std::vector<int> word) { return Permutation(std::move(word)); }

// Accepts "4235167" (digit shorthand, n <= 9) or "4,2,3,5,1,6,7".
inline Permutation parse_permutation(std::string_view text) {
  std::vector<int> word;
  if (text.find(',') == std::string_view::npos) {
    for (char ch : text) {
      if (ch < '0' || ch > '9')
        throw InvalidArgument("invalid character '" + std::string(1, ch) + "' in permutation \"" +
                              std::string(text) + "\"");
      word.push_back(ch - '0');
    }
    if (word.size() > 9)
      throw InvalidArgument("digit shorthand is limited to n <= 9; use comma-separated entries");
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = std::min(text.find(',', start), text.size());
      const auto token = text.substr(start, end - start);
      if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidArgument("malformed entry \"" + std::string(token) + "\" in permutation \"" +
                              std::string(text) + "\"");
      if (token.size() > 9) throw InvalidArgument("entry \"" + std::string(token) + "\" is too large");
      word.push_back(std::stoi(std::string(token)));
      start = end + 1;
    }
  }
  return Permutation(std::move(word));
}

// Replaces the i-th smallest entry by i.
inline Permutation reduce(std::span<const int> word) {
  if (word.empty()) throw InvalidArgument("cannot reduce an empty word");
  std::vector<std::size_t> order(word.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return word[a] < word[b]; });
  std::vector<int> out(word.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (rank > 0 && word[order[rank]] == word[order[rank - 1]])
      throw InvalidArgument("duplicate entry " + std::to_string(word[order[rank]]) + " cannot be reduced");
    out[order[rank]] = static_cast<int>(rank + 1);
  }
  return Permutation(std::move(out), Permutation::Unchecked{});
}

enum class TrivialBijection { reverse, complement, invert };

inline Permutation reverse(const Permutation& p) {
  std::vector<int> w(p.word().rbegin(), p.word().rend());
  return Permutation(std::move(w), Permutation::Unchecked{});
}

inline Permutation complement(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> w(p.size());
  std::transform(p.word().begin(), p.word().end(), w.begin(), [n](int x) { return n - x + 1; });
  return Permutation(std::move(w), Permutation::Unchecked{});
}

inline Permutation invert(const Permutation& p) {
  std::vector<int> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[p.word()[i] - 1] = static_cast<int>(i + 1);
  return Permutation(std::move(w), Permutation::Unchecked{});
}

inline Permutation apply(TrivialBijection which, const Permutation& p) {
  switch (which) {
    case TrivialBijection::reverse: return reverse(p);
    case TrivialBijection::complement: return complement(p);
    case TrivialBijection::invert: return invert(p);
  }
  return p;
}

inline Permutation direct_sum(const Permutation& alpha, const Permutation& beta) {
  std::vector<int> w(alpha.word().begin(), alpha.word().end());
  const int shift = static_cast<int>(alpha.size());
  for (int x : beta.word()) w.push_back(x + shift);
  return Permutation(std::move(w), Permutation::Unchecked{});
}

inline Permutation direct_sum(std::span<const Permutation> blocks) {
  if (blocks.empty()) throw InvalidArgument("direct sum of zero blocks");
  std::vector<int> w;
  int shift = 0;
  for (const auto& b : blocks) {
    for (int x : b.word()) w.push_back(x + shift);
    shift += static_cast<int>(b.size());
  }
  return Permutation(std::move(w), Permutation::Unchecked{});
}

// Finest decomposition pi = b1 (+) b2 (+) ... ; cuts after every prefix that
// is exactly {1..i}.
inline std::vector<Permutation> decompose_direct_sum(const Permutation& p) {
  std::vector<Permutation> blocks;
  const auto w = p.word();
  std::size_t start = 0;
  int prefix_max = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    prefix_max = std::max(prefix_max, w[i]);
    if (prefix_max == static_cast<int>(i + 1)) {
      std::vector<int> block;
      for (std::size_t j = start; j <= i; ++j) block.push_back(w[j] - static_cast<int>(start));
      blocks.emplace_back(std::move(block), Permutation::Unchecked{});
      start = i + 1;
    }
  }
  return blocks;
}

// Position sets whose values are maximal runs of consecutive values v, v-1,
// ..., w appearing left to right (descent runs of the inverse). Ordered by
// decreasing maximum value; positions within a run ascend.
inline std::vector<PositionSet> inverse_descent_runs(const Permutation& p) {
  const auto n = p.size();
  std::vector<Position> pos_of(n + 1);
  for (std::size_t i = 0; i < n; ++i) pos_of[p.word()[i]] = i + 1;

  std::vector<PositionSet> runs;
  PositionSet current{pos_of[n]};
  for (std::size_t v = n - 1; v >= 1; --v) {
    if (pos_of[v] > pos_of[v + 1]) {
      current.push_back(pos_of[v]);
    } else {
      runs.push_back(std::move(current));
      current = {pos_of[v]};
    }
  }
  runs.push_back(std::move(current));
  return runs;  // values were visited in decreasing order, so positions ascend
}

// B lies strictly inside a gap of A: there are x < z in A with no element of A
// between them and every element of B strictly between x and z.
inline bool nested_in(std::span<const Position> inner, std::span<const Position> outer) {
  if (inner.empty() || outer.size() < 2) return false;
  const auto [lo, hi] = std::minmax_element(inner.begin(), inner.end());
  std::vector<Position> sorted(outer.begin(), outer.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j)
    if (sorted[j] < *lo && *hi < sorted[j + 1]) return true;
  return false;
}

inline bool disjoint_ranges(std::span<const Position> a, std::span<const Position> b) {
  if (a.empty() || b.empty()) return true;
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  return *amax < *bmin || *bmax < *amin;
}

// True when, for every pair of runs I_u, I_v with u < v, the later run is
// nested in the earlier one or the two are disjoint. Equivalent to
// 231-avoidance; allowing nesting the other way round would admit 231 itself.
inline bool runs_nested_or_disjoint(const Permutation& p) {
  const auto runs = inverse_descent_runs(p);
  for (std::size_t u = 0; u < runs.size(); ++u)
    for (std::size_t v = u + 1; v < runs.size(); ++v)
      if (!nested_in(runs[v], runs[u]) && !disjoint_ranges(runs[u], runs[v]))
        return false;
  return true;
}

}  // namespace permstat
