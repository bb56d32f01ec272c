#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/error.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

using Occurrence = std::vector<Position>;

// A classical pattern plus adjacency constraints between consecutive slots.
// Slot j in `adjacency()` (1 <= j < m) forces occurrence positions
// i_{j+1} = i_j + 1.
//
// Text form: dash-separated blocks of digits. Letters inside one block are
// adjacent, a dash allows a gap. The underlined pattern 2_31_ is "2-31",
// classical 321 is "3-2-1", the descent pattern _21_ is "21".
class VincularPattern {
 public:
  VincularPattern(Permutation word, std::vector<std::size_t> adjacency);

  const Permutation& word() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }
  const std::vector<std::size_t>& adjacency() const noexcept { return adjacency_; }
  bool adjacent_after(std::size_t slot) const noexcept { return (adjacent_mask_ >> slot) & 1u; }
  bool is_classical() const noexcept { return adjacency_.empty(); }

  std::string to_string() const;

  friend bool operator==(const VincularPattern& a, const VincularPattern& b) {
    return a.word_ == b.word_ && a.adjacency_ == b.adjacency_;
  }

 private:
  Permutation word_;
  std::vector<std::size_t> adjacency_;
  std::uint64_t adjacent_mask_ = 0;  // bit j set <=> slot j (1-based) is adjacent
};

inline VincularPattern::VincularPattern(Permutation word, std::vector<std::size_t> adjacency)
    : word_(std::move(word)), adjacency_(std::move(adjacency)) {
  if (word_.size() > 63) throw InvalidArgument("pattern too long");
  std::sort(adjacency_.begin(), adjacency_.end());
  adjacency_.erase(std::unique(adjacency_.begin(), adjacency_.end()), adjacency_.end());
  for (auto slot : adjacency_) {
    if (slot < 1 || slot >= word_.size())
      throw InvalidArgument("adjacency slot " + std::to_string(slot) + " outside 1.." +
                            std::to_string(word_.size() - 1));
    adjacent_mask_ |= std::uint64_t{1} << slot;
  }
}

inline std::string VincularPattern::to_string() const {
  std::string out;
  for (std::size_t j = 1; j <= size(); ++j) {
    if (j > 1 && !adjacent_after(j - 1)) out += '-';
    out += std::to_string(word_(j));
  }
  return out;
}

inline VincularPattern parse_pattern(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty pattern");
  std::vector<int> letters;
  std::vector<std::size_t> adjacency;
  bool block_open = false;
  for (char ch : text) {
    if (ch == '-') {
      if (!block_open) throw InvalidArgument("empty block in pattern \"" + std::string(text) + "\"");
      block_open = false;
    } else if (ch >= '1' && ch <= '9') {
      if (block_open) adjacency.push_back(letters.size());
      letters.push_back(ch - '0');
      block_open = true;
    } else {
      throw InvalidArgument("invalid character '" + std::string(1, ch) + "' in pattern \"" + std::string(text) +
                            "\"");
    }
  }
  if (!block_open) throw InvalidArgument("empty block in pattern \"" + std::string(text) + "\"");
  try {
    return VincularPattern(Permutation(std::move(letters)), std::move(adjacency));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("pattern \"" + std::string(text) + "\" is not reduced: " + e.what());
  }
}

namespace detail {

// Backtracking over host positions. Each newly chosen slot is compared against
// every earlier slot, so a partial tuple is abandoned as soon as its relative
// order departs from the pattern word.
template <typename Visit>
bool visit_occurrences(const Permutation& host, const VincularPattern& p, Visit&& visit) {
  const std::size_t n = host.size();
  const std::size_t m = p.size();
  if (m > n) return true;
  const auto pw = p.word().word();
  const auto hw = host.word();
  std::vector<std::size_t> chosen(m);  // 0-based host indices

  auto consistent = [&](std::size_t slot, std::size_t idx) {
    for (std::size_t s = 0; s < slot; ++s)
      if ((pw[s] < pw[slot]) != (hw[chosen[s]] < hw[idx])) return false;
    return true;
  };

  // Returns false to stop the enumeration early.
  auto recurse = [&](auto&& self, std::size_t slot, std::size_t from) -> bool {
    if (slot == m) return visit(std::span<const std::size_t>(chosen));
    const std::size_t last = n - (m - slot);  // leave room for remaining slots
    if (slot > 0 && p.adjacent_after(slot)) {
      const std::size_t idx = chosen[slot - 1] + 1;
      if (idx > last || !consistent(slot, idx)) return true;
      chosen[slot] = idx;
      return self(self, slot + 1, idx + 1);
    }
    for (std::size_t idx = from; idx <= last; ++idx) {
      if (!consistent(slot, idx)) continue;
      chosen[slot] = idx;
      if (!self(self, slot + 1, idx + 1)) return false;
    }
    return true;
  };
  return recurse(recurse, 0, 0);
}

}  // namespace detail

// All occurrences as 1-based position tuples in lexicographic order.
inline std::vector<Occurrence> occurrences(const Permutation& host, const VincularPattern& p) {
  std::vector<Occurrence> out;
  detail::visit_occurrences(host, p, [&](std::span<const std::size_t> idx) {
    Occurrence occ(idx.size());
    for (std::size_t s = 0; s < idx.size(); ++s) occ[s] = idx[s] + 1;
    out.push_back(std::move(occ));
    return true;
  });
  return out;
}

inline long long count_occurrences(const Permutation& host, const VincularPattern& p) {
  long long count = 0;
  detail::visit_occurrences(host, p, [&](std::span<const std::size_t>) {
    ++count;
    return true;
  });
  return count;
}

inline std::optional<Occurrence> first_occurrence(const Permutation& host, const VincularPattern& p) {
  std::optional<Occurrence> found;
  detail::visit_occurrences(host, p, [&](std::span<const std::size_t> idx) {
    Occurrence occ(idx.size());
    for (std::size_t s = 0; s < idx.size(); ++s) occ[s] = idx[s] + 1;
    found = std::move(occ);
    return false;
  });
  return found;
}

inline bool contains_pattern(const Permutation& host, const VincularPattern& p) {
  return first_occurrence(host, p).has_value();
}

inline std::string format_occurrence(std::span<const Position> occ) {
  std::string out = "(";
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(occ[i]);
  }
  return out + ")";
}

// Reverse flips the word and mirrors adjacency slots (j -> m-j); complement
// keeps adjacency. Inversion of a vincular pattern is bivincular and is not
// supported.
inline VincularPattern transform_pattern(const VincularPattern& p, TrivialBijection which) {
  const std::size_t m = p.size();
  switch (which) {
    case TrivialBijection::reverse: {
      std::vector<std::size_t> adj;
      for (auto j : p.adjacency()) adj.push_back(m - j);
      return VincularPattern(reverse(p.word()), std::move(adj));
    }
    case TrivialBijection::complement:
      return VincularPattern(complement(p.word()), p.adjacency());
    case TrivialBijection::invert:
      break;
  }
  throw InvalidArgument("unsupported transform: the inverse of a vincular pattern is bivincular");
}

// Inverse of a classical pattern (word only).
inline VincularPattern invert_classical(const VincularPattern& p) {
  if (!p.is_classical())
    throw InvalidArgument("unsupported transform: pattern " + p.to_string() + " has adjacency constraints");
  return VincularPattern(invert(p.word()), {});
}

// Total occurrence count over a multiset of patterns.
inline long long pattern_sum(const Permutation& host, std::span<const VincularPattern> terms) {
  long long total = 0;
  for (const auto& t : terms) total += count_occurrences(host, t);
  return total;
}

inline std::vector<VincularPattern> parse_patterns(std::initializer_list<std::string_view> texts) {
  std::vector<VincularPattern> out;
  for (auto t : texts) out.push_back(parse_pattern(t));
  return out;
}

}  // namespace permstat
