#pragma once

#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/error.hpp"
#include "permstat/pattern.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

enum class SetKind { all, avoiders, av_prime_231 };

// A permutation family at a fixed length. Wire syntax (without n):
//   all | av:<p1>[,<p2>...] | avp:231
// Avoider patterns must be classical ("av:2-3-1").
struct SetSpec {
  SetKind kind = SetKind::all;
  std::vector<VincularPattern> patterns;
  std::size_t n = 1;

  std::string to_string() const {
    switch (kind) {
      case SetKind::all: return "all";
      case SetKind::av_prime_231: return "avp:231";
      case SetKind::avoiders: {
        std::string out = "av:";
        for (std::size_t i = 0; i < patterns.size(); ++i) {
          if (i) out += ',';
          out += patterns[i].to_string();
        }
        return out;
      }
    }
    return "?";
  }

  SetSpec with_n(std::size_t len) const {
    SetSpec s = *this;
    s.n = len;
    return s;
  }
};

inline SetSpec all_permutations(std::size_t n) { return {SetKind::all, {}, n}; }
inline SetSpec av_prime_231(std::size_t n) { return {SetKind::av_prime_231, {}, n}; }
inline SetSpec avoiders(std::vector<VincularPattern> patterns, std::size_t n);
inline SetSpec avoiders(std::string_view classical, std::size_t n) { return avoiders({parse_pattern(classical)}, n); }

inline SetSpec avoiders(std::vector<VincularPattern> patterns, std::size_t n) {
  if (n < 1) throw InvalidArgument("set length must be at least 1");
  if (patterns.empty()) throw InvalidArgument("avoidance set needs at least one pattern");
  for (const auto& p : patterns)
    if (!p.is_classical())
      throw InvalidArgument("avoidance pattern \"" + p.to_string() + "\" must be classical (write e.g. 2-3-1)");
  return {SetKind::avoiders, std::move(patterns), n};
}

inline SetSpec parse_set_spec(std::string_view text, std::size_t n) {
  if (n < 1) throw InvalidArgument("set length must be at least 1");
  if (text == "all") return all_permutations(n);
  if (text == "avp:231") return av_prime_231(n);
  if (text.starts_with("av:")) {
    std::vector<VincularPattern> pats;
    auto rest = text.substr(3);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto end = std::min(rest.find(',', start), rest.size());
      pats.push_back(parse_pattern(rest.substr(start, end - start)));
      start = end + 1;
    }
    return avoiders(std::move(pats), n);
  }
  throw InvalidArgument("unknown set spec \"" + std::string(text) + "\" (expected all, av:<patterns>, avp:231)");
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f = saturating_mul(f, k);
  return f;
}

// C(0) = 1, C(k+1) = sum C(i) C(k-i).
inline std::uint64_t catalan(std::size_t n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < k; ++i) {
      const auto term = saturating_mul(c[i], c[k - 1 - i]);
      c[k] = (term > std::numeric_limits<std::uint64_t>::max() - c[k]) ? std::numeric_limits<std::uint64_t>::max()
                                                                        : c[k] + term;
    }
  return c[n];
}

// Exact for S_n, Av'(231) and single length-<=3 avoidance; an upper bound
// otherwise.
inline std::uint64_t predicted_cardinality(const SetSpec& spec) {
  switch (spec.kind) {
    case SetKind::all: return factorial(spec.n);
    case SetKind::av_prime_231: return catalan(spec.n - 1);
    case SetKind::avoiders: break;
  }
  std::uint64_t bound = factorial(spec.n);
  for (const auto& p : spec.patterns) {
    std::uint64_t b = factorial(spec.n);
    if (p.size() > spec.n) b = factorial(spec.n);
    else if (p.size() == 1) b = 0;
    else if (p.size() == 2) b = 1;
    else if (p.size() == 3) b = catalan(spec.n);
    bound = std::min(bound, b);
  }
  return bound;
}

// Member-count ceilings: 10! for S_n and Catalan(12) for avoidance families by
// default. `override_limit` replaces both.
struct Guard {
  std::uint64_t max_all = 3628800;
  std::uint64_t max_restricted = 208012;

  static Guard with_limit(std::uint64_t limit) { return {limit, limit}; }
  static Guard unlimited() { return with_limit(std::numeric_limits<std::uint64_t>::max()); }

  // PERMSTAT_MAX_MEMBERS, when set, overrides both ceilings.
  static Guard from_environment() {
    if (const char* env = std::getenv("PERMSTAT_MAX_MEMBERS"); env && *env) {
      char* end = nullptr;
      const auto v = std::strtoull(env, &end, 10);
      if (end && *end == '\0') return with_limit(v);
      throw InvalidArgument(std::string("PERMSTAT_MAX_MEMBERS is not a number: ") + env);
    }
    return {};
  }

  void check(const SetSpec& spec) const {
    const auto predicted = predicted_cardinality(spec);
    const auto limit = spec.kind == SetKind::all ? max_all : max_restricted;
    if (predicted > limit)
      throw DomainError("enumeration guard exceeded for " + spec.to_string() + " at n=" + std::to_string(spec.n) +
                            ": predicted " + std::to_string(predicted) + " members, limit " + std::to_string(limit),
                        std::to_string(predicted));
  }
};

namespace detail {

// Does the classical pattern occur in `prefix` using its last entry?
inline bool occurs_ending_at_last(std::span<const int> prefix, const VincularPattern& p) {
  const std::size_t m = p.size();
  const std::size_t len = prefix.size();
  if (m > len) return false;
  const auto pw = p.word().word();
  std::vector<std::size_t> chosen(m);
  chosen[m - 1] = len - 1;
  auto consistent = [&](std::size_t slot, std::size_t idx) {
    if ((pw[slot] < pw[m - 1]) != (prefix[idx] < prefix[len - 1])) return false;
    for (std::size_t s = 0; s < slot; ++s)
      if ((pw[s] < pw[slot]) != (prefix[chosen[s]] < prefix[idx])) return false;
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t slot, std::size_t from) -> bool {
    if (slot == m - 1) return true;
    const std::size_t last = len - 1 - (m - 1 - slot);
    for (std::size_t idx = from; idx <= last; ++idx) {
      if (!consistent(slot, idx)) continue;
      chosen[slot] = idx;
      if (self(self, slot + 1, idx + 1)) return true;
    }
    return false;
  };
  return recurse(recurse, 0, 0);
}

inline const VincularPattern& pattern_231() {
  static const VincularPattern p = parse_pattern("2-3-1");
  return p;
}

}  // namespace detail

// Membership test by direct pattern search.
inline bool contains(const SetSpec& spec, const Permutation& p) {
  if (p.size() != spec.n)
    throw InvalidArgument("length mismatch: permutation has length " + std::to_string(p.size()) + ", set has n=" +
                          std::to_string(spec.n));
  switch (spec.kind) {
    case SetKind::all: return true;
    case SetKind::av_prime_231:
      return p(1) == static_cast<int>(p.size()) && !contains_pattern(p, detail::pattern_231());
    case SetKind::avoiders:
      for (const auto& pat : spec.patterns)
        if (contains_pattern(p, pat)) return false;
      return true;
  }
  return false;
}

// Throws DomainError naming the violated condition and a witness occurrence.
inline void require_member(const SetSpec& spec, const Permutation& p, std::string_view context) {
  if (p.size() != spec.n) {
    throw DomainError(std::string(context) + ": " + p.to_string() + " has length " + std::to_string(p.size()) +
                      ", expected " + std::to_string(spec.n));
  }
  auto fail_with = [&](const VincularPattern& pat) {
    if (auto occ = first_occurrence(p, pat)) {
      throw DomainError(std::string(context) + ": " + p.to_string() + " is not in " + spec.to_string() +
                            " (occurrence " + format_occurrence(*occ) + " of " + pat.to_string() + ")",
                        format_occurrence(*occ));
    }
  };
  switch (spec.kind) {
    case SetKind::all: return;
    case SetKind::av_prime_231:
      if (p(1) != static_cast<int>(p.size()))
        throw DomainError(std::string(context) + ": " + p.to_string() + " is not in avp:231 (first entry " +
                              std::to_string(p(1)) + " is not " + std::to_string(p.size()) + ")",
                          "(1)");
      fail_with(detail::pattern_231());
      return;
    case SetKind::avoiders:
      for (const auto& pat : spec.patterns) fail_with(pat);
      return;
  }
}

inline void require_avoids(const Permutation& p, std::string_view classical, std::string_view context) {
  require_member(avoiders(classical, p.size()), p, context);
}

// Lexicographic stream over a family. Prefixes that already contain a
// forbidden pattern are abandoned. Restartable with reset().
class PermutationStream {
 public:
  explicit PermutationStream(SetSpec spec, std::vector<int> fixed_prefix = {})
      : spec_(std::move(spec)), fixed_(std::move(fixed_prefix)) {
    if (fixed_.size() > spec_.n) throw InvalidArgument("stream prefix longer than n");
    reset();
  }

  void reset() {
    const auto n = spec_.n;
    word_.assign(n, 0);
    used_.assign(n + 1, false);
    cursor_.assign(n, 0);
    depth_ = 0;
    finished_ = false;
    emitted_ = false;
  }

  const SetSpec& spec() const noexcept { return spec_; }

  std::optional<Permutation> next() {
    if (finished_) return std::nullopt;
    const std::size_t n = spec_.n;
    if (emitted_) {
      emitted_ = false;
      depth_ = n - 1;
      unplace(depth_);
    }
    while (true) {
      const int v = next_candidate(depth_, cursor_[depth_] + 1);
      if (v == 0) {
        cursor_[depth_] = 0;
        if (depth_ == 0) {
          finished_ = true;
          return std::nullopt;
        }
        --depth_;
        unplace(depth_);
        continue;
      }
      cursor_[depth_] = v;
      place(depth_, v);
      if (violates(depth_)) {
        unplace(depth_);
        continue;
      }
      if (depth_ + 1 == n) {
        emitted_ = true;
        return Permutation(word_, Permutation::Unchecked{});
      }
      ++depth_;
      cursor_[depth_] = 0;
    }
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Permutation;
    using difference_type = std::ptrdiff_t;
    using pointer = const Permutation*;
    using reference = const Permutation&;

    iterator() = default;
    explicit iterator(PermutationStream* s) : stream_(s) { ++*this; }
    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = stream_->next();
      if (!current_) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.stream_ == b.stream_; }

   private:
    PermutationStream* stream_ = nullptr;
    std::optional<Permutation> current_;
  };

  // Each begin() restarts the stream.
  iterator begin() {
    reset();
    return iterator(this);
  }
  iterator end() { return iterator(); }

 private:
  int next_candidate(std::size_t depth, int from) const {
    const int n = static_cast<int>(spec_.n);
    int lo = from, hi = n;
    if (depth < fixed_.size()) {
      lo = std::max(lo, fixed_[depth]);
      hi = fixed_[depth];
    } else if (depth == 0 && spec_.kind == SetKind::av_prime_231) {
      lo = std::max(lo, n);
    }
    for (int v = lo; v <= hi; ++v)
      if (!used_[v]) return v;
    return 0;
  }

  void place(std::size_t depth, int v) {
    word_[depth] = v;
    used_[v] = true;
  }
  void unplace(std::size_t depth) { used_[word_[depth]] = false; }

  bool violates(std::size_t depth) const {
    const std::span<const int> prefix(word_.data(), depth + 1);
    switch (spec_.kind) {
      case SetKind::all: return false;
      case SetKind::av_prime_231: return detail::occurs_ending_at_last(prefix, detail::pattern_231());
      case SetKind::avoiders:
        for (const auto& p : spec_.patterns)
          if (detail::occurs_ending_at_last(prefix, p)) return true;
        return false;
    }
    return false;
  }

  SetSpec spec_;
  std::vector<int> fixed_;
  std::vector<int> word_;
  std::vector<bool> used_;
  std::vector<int> cursor_;
  std::size_t depth_ = 0;
  bool finished_ = false;
  bool emitted_ = false;
};

// Guarded entry point.
inline PermutationStream enumerate(const SetSpec& spec, const Guard& guard = {}) {
  guard.check(spec);
  return PermutationStream(spec);
}

inline std::vector<Permutation> collect(const SetSpec& spec, const Guard& guard = {}) {
  std::vector<Permutation> out;
  for (const auto& p : enumerate(spec, guard)) out.push_back(p);
  return out;
}

inline std::uint64_t count_members(const SetSpec& spec, const Guard& guard = {}) {
  auto stream = enumerate(spec, guard);
  std::uint64_t c = 0;
  while (stream.next()) ++c;
  return c;
}

}  // namespace permstat
