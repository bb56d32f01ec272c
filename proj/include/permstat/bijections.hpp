#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/error.hpp"
#include "permstat/perm_sets.hpp"
#include "permstat/permutation.hpp"
#include "permstat/statistics.hpp"

namespace permstat {

// Membership checks on bijection entry points. `trusted` skips them for bulk
// loops whose inputs come from a generator of the right family.
enum class Domain { checked, trusted };

// Run lengths c and thresholds m parameterising Av'(231):
//   sum(c) = n = m_1 > m_2 > ... > m_k,  c_i >= 1,
//   m_i > c_i + ... + c_k for 1 < i <= k.
struct ConsistentPair {
  std::vector<int> c;
  std::vector<int> m;

  std::size_t k() const noexcept { return c.size(); }
  int n() const noexcept { return m.empty() ? 0 : m.front(); }

  std::string to_string() const {
    auto seq = [](const std::vector<int>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + ")";
    };
    return "(" + seq(c) + "," + seq(m) + ")";
  }

  friend bool operator==(const ConsistentPair&, const ConsistentPair&) = default;
};

inline std::vector<std::string> pair_violations(const std::vector<int>& c, const std::vector<int>& m) {
  std::vector<std::string> errs;
  if (c.empty() || m.empty()) errs.push_back("sequences must be non-empty");
  if (c.size() != m.size())
    errs.push_back("length mismatch: c has " + std::to_string(c.size()) + " entries, m has " +
                   std::to_string(m.size()));
  if (!errs.empty()) return errs;

  long long total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1) errs.push_back("c_" + std::to_string(i + 1) + " = " + std::to_string(c[i]) + " is not positive");
    total += c[i];
  }
  if (m[0] != total)
    errs.push_back("m_1 = " + std::to_string(m[0]) + " differs from c_1 + ... + c_k = " + std::to_string(total));
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] >= m[i - 1])
      errs.push_back("m is not strictly decreasing at index " + std::to_string(i + 1) + " (" +
                     std::to_string(m[i - 1]) + " then " + std::to_string(m[i]) + ")");
  long long suffix = 0;
  for (std::size_t i = c.size(); i-- > 1;) {
    suffix += c[i];
    if (m[i] <= suffix)
      errs.push_back("m_" + std::to_string(i + 1) + " = " + std::to_string(m[i]) + " must exceed c_" +
                     std::to_string(i + 1) + " + ... + c_k = " + std::to_string(suffix));
  }
  return errs;
}

inline ConsistentPair validate_pair(std::vector<int> c, std::vector<int> m) {
  const auto errs = pair_violations(c, m);
  if (!errs.empty()) {
    std::string msg = "inconsistent pair";
    for (const auto& e : errs) msg += "; " + e;
    throw InvalidArgument(msg);
  }
  return {std::move(c), std::move(m)};
}

// Reads (run lengths, descending ascent positions) off a member of Av'(231).
inline ConsistentPair theta1(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_member(av_prime_231(p.size()), p, "theta1");
  ConsistentPair pair;
  for (const auto& run : inverse_descent_runs(p)) pair.c.push_back(static_cast<int>(run.size()));
  pair.m.push_back(static_cast<int>(p.size()));
  const auto asc = stats::ascent_positions(p);
  for (auto it = asc.rbegin(); it != asc.rend(); ++it) pair.m.push_back(static_cast<int>(*it));
  return pair;
}

// Diagnostics collected while running the two-stack construction.
struct StackTrace {
  // Whether stack A was empty after the draining loop, one entry per iteration.
  std::vector<bool> drained_empty;
  std::size_t monotonicity_checks = 0;
  std::size_t monotonicity_violations = 0;
};

// Two-stack construction of the unique Av'(231) member whose inverse descent
// runs have lengths c and whose ascent tops are {m_2, ..., m_k}.
//
// Iteration i pushes the next c_i largest unused values (descending, so the
// smallest ends on top), moves entries from A to B while the top of A is not
// a required ascent top, then moves one more if A is non-empty. B read from
// top to bottom is the result.
//
// Stack A must stay increasing from top to bottom. Without a trace a violation
// throws std::logic_error; with a trace it is counted.
inline Permutation theta2(const ConsistentPair& pair, StackTrace* trace = nullptr) {
  validate_pair(pair.c, pair.m);
  const int n = pair.n();
  std::vector<bool> is_top(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t j = 1; j < pair.m.size(); ++j) is_top[pair.m[j]] = true;

  std::vector<int> a, b;  // back() is the top
  a.reserve(n);
  b.reserve(n);
  auto check_monotone = [&] {
    const bool ok = a.size() < 2 || a[a.size() - 1] < a[a.size() - 2];
    if (trace) {
      ++trace->monotonicity_checks;
      if (!ok) ++trace->monotonicity_violations;
    } else if (!ok) {
      throw std::logic_error("stack A lost its top-to-bottom increasing order");
    }
  };
  auto transfer = [&] {
    b.push_back(a.back());
    a.pop_back();
  };

  int next_value = n;
  for (std::size_t i = 0; i < pair.k(); ++i) {
    for (int j = 0; j < pair.c[i]; ++j) {
      a.push_back(next_value--);
      check_monotone();
    }
    while (!a.empty() && !is_top[a.back()]) transfer();
    if (trace) trace->drained_empty.push_back(a.empty());
    if (!a.empty()) transfer();
  }
  if (static_cast<int>(b.size()) != n)
    throw std::logic_error("two-stack construction produced " + std::to_string(b.size()) + " entries, expected " +
                           std::to_string(n));
  return Permutation(std::vector<int>(b.rbegin(), b.rend()), Permutation::Unchecked{});
}

// Inverse of theta1: the unique Av'(231) member with run lengths c and ascent
// positions {m_2, ..., m_k}. Built right to left with a stack: iteration i
// pushes the values of run i, then pops entries into positions n, n-1, ...
// until only m_{i+1} positions remain unfilled (all of them on the last
// iteration).
inline Permutation from_ascent_data(const ConsistentPair& pair) {
  validate_pair(pair.c, pair.m);
  const int n = pair.n();
  std::vector<int> stack, out;  // out collects positions n, n-1, ..., 1
  int next_value = n;
  for (std::size_t i = 0; i < pair.k(); ++i) {
    for (int j = 0; j < pair.c[i]; ++j) stack.push_back(next_value--);
    const std::size_t target = i + 1 < pair.k() ? static_cast<std::size_t>(n - pair.m[i + 1]) : std::size_t(n);
    while (out.size() < target) {
      out.push_back(stack.back());
      stack.pop_back();
    }
  }
  return Permutation(std::vector<int>(out.rbegin(), out.rend()), Permutation::Unchecked{});
}

// Av'(231) -> Av'(231), sending the ascent position set to the ascent top
// value set while keeping inverse-descent-run lengths.
inline Permutation theta_prime(const Permutation& p, Domain domain = Domain::checked) {
  return theta2(theta1(p, domain));
}

inline Permutation theta_prime_inverse(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_member(av_prime_231(p.size()), p, "theta_prime_inverse");
  ConsistentPair pair;
  for (const auto& run : inverse_descent_runs(p)) pair.c.push_back(static_cast<int>(run.size()));
  pair.m.push_back(static_cast<int>(p.size()));
  const auto tops = stats::ascent_tops(p);
  for (auto it = tops.rbegin(); it != tops.rend(); ++it) pair.m.push_back(*it);
  return from_ascent_data(pair);
}

namespace detail {
template <typename BlockMap>
Permutation map_blocks(const Permutation& p, BlockMap&& f) {
  auto blocks = decompose_direct_sum(p);
  for (auto& block : blocks) {
    if (block(1) != static_cast<int>(block.size()))
      throw std::logic_error("direct-sum block " + block.to_string() + " does not start with its maximum");
    block = f(block);
  }
  return direct_sum(blocks);
}
}  // namespace detail

// Av(231) -> Av(231) sending maj to makl: theta_prime applied blockwise over
// the finest direct-sum decomposition.
inline Permutation theta(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "2-3-1", "theta");
  return detail::map_blocks(p, [](const Permutation& b) { return theta_prime(b, Domain::trusted); });
}

inline Permutation theta_inverse(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "2-3-1", "theta_inverse");
  return detail::map_blocks(p, [](const Permutation& b) { return theta_prime_inverse(b, Domain::trusted); });
}

// Av(312) -> Av(312) sending bast to foze: conjugate of theta by c o r.
inline Permutation big_theta(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "big_theta");
  return complement(reverse(theta(complement(reverse(p)), Domain::trusted)));
}

// Av(312) -> Av(321): left-to-right maxima stay put, the remaining values fill
// the remaining positions in increasing order.
inline Permutation psi(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "psi");
  const auto lmax = stats::left_to_right_maxima(p);
  std::vector<bool> fixed(p.size() + 1, false);
  for (auto i : lmax) fixed[i] = true;
  std::vector<int> rest;
  for (Position i = 1; i <= p.size(); ++i)
    if (!fixed[i]) rest.push_back(p(i));
  std::sort(rest.begin(), rest.end());
  std::vector<int> out(p.word().begin(), p.word().end());
  std::size_t r = 0;
  for (Position i = 1; i <= p.size(); ++i)
    if (!fixed[i]) out[i - 1] = rest[r++];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

// A composition of named maps, applied right to left: "c∘r∘theta" applies
// theta first. "." is accepted as an ASCII separator.
class BijectionExpr {
 public:
  using Map = std::function<Permutation(const Permutation&)>;

  static BijectionExpr parse(std::string_view text);

  Permutation operator()(const Permutation& p) const {
    Permutation out = p;
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) out = it->second(out);
    return out;
  }

  const std::string& text() const noexcept { return text_; }
  std::vector<std::string> stage_names() const {
    std::vector<std::string> names;
    for (const auto& [name, _] : stages_) names.push_back(name);
    return names;
  }

  static Map named(std::string_view name);

 private:
  std::string text_;
  std::vector<std::pair<std::string, Map>> stages_;  // left to right as written
};

inline BijectionExpr::Map BijectionExpr::named(std::string_view name) {
  if (name == "reverse" || name == "r") return [](const Permutation& p) { return reverse(p); };
  if (name == "complement" || name == "c") return [](const Permutation& p) { return complement(p); };
  if (name == "invert" || name == "i") return [](const Permutation& p) { return invert(p); };
  if (name == "identity" || name == "id") return [](const Permutation& p) { return p; };
  if (name == "theta_prime") return [](const Permutation& p) { return theta_prime(p); };
  if (name == "theta_prime_inv") return [](const Permutation& p) { return theta_prime_inverse(p); };
  if (name == "theta") return [](const Permutation& p) { return theta(p); };
  if (name == "theta_inv") return [](const Permutation& p) { return theta_inverse(p); };
  if (name == "big_theta") return [](const Permutation& p) { return big_theta(p); };
  if (name == "psi") return [](const Permutation& p) { return psi(p); };
  if (name == "theta1" || name == "theta2")
    throw InvalidArgument(std::string(name) + " maps between permutations and consistent pairs and cannot be composed");
  throw InvalidArgument("unknown bijection \"" + std::string(name) + "\"");
}

inline BijectionExpr BijectionExpr::parse(std::string_view text) {
  BijectionExpr expr;
  expr.text_ = std::string(text);
  static constexpr std::string_view ring = "\xE2\x88\x98";  // U+2218
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.size(), skip = 0;
    if (auto r = text.find(ring, start); r != std::string_view::npos && r < end) end = r, skip = ring.size();
    if (auto d = text.find('.', start); d != std::string_view::npos && d < end) end = d, skip = 1;
    auto name = text.substr(start, end - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name.empty()) throw InvalidArgument("empty stage in bijection expression \"" + std::string(text) + "\"");
    expr.stages_.emplace_back(std::string(name), named(name));
    if (end == text.size()) break;
    start = end + skip;
  }
  return expr;
}

}  // namespace permstat
