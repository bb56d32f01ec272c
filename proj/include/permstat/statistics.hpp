#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permstat/error.hpp"
#include "permstat/pattern.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

// Set-valued statistics follow one convention: the capitalised names
// (Asc, Des, Lmax, Rmin, ...) are POSITION sets, the "-l" suffixed names
// (Lmaxl, ...) and the ascent/descent top/bottom sets are VALUE sets.
namespace stats {

inline PositionSet ascent_positions(const Permutation& p) {
  PositionSet out;
  for (Position i = 1; i < p.size(); ++i)
    if (p(i) < p(i + 1)) out.push_back(i);
  return out;
}

inline PositionSet descent_positions(const Permutation& p) {
  PositionSet out;
  for (Position i = 1; i < p.size(); ++i)
    if (p(i) > p(i + 1)) out.push_back(i);
  return out;
}

inline std::vector<int> ascent_tops(const Permutation& p) {
  std::vector<int> out;
  for (auto i : ascent_positions(p)) out.push_back(p(i + 1));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> ascent_bottoms(const Permutation& p) {
  std::vector<int> out;
  for (auto i : ascent_positions(p)) out.push_back(p(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> descent_tops(const Permutation& p) {
  std::vector<int> out;
  for (auto i : descent_positions(p)) out.push_back(p(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> descent_bottoms(const Permutation& p) {
  std::vector<int> out;
  for (auto i : descent_positions(p)) out.push_back(p(i + 1));
  std::sort(out.begin(), out.end());
  return out;
}

inline PositionSet left_to_right_maxima(const Permutation& p) {
  PositionSet out;
  int best = 0;
  for (Position i = 1; i <= p.size(); ++i)
    if (p(i) > best) {
      best = p(i);
      out.push_back(i);
    }
  return out;
}

inline PositionSet left_to_right_minima(const Permutation& p) {
  PositionSet out;
  int best = static_cast<int>(p.size()) + 1;
  for (Position i = 1; i <= p.size(); ++i)
    if (p(i) < best) {
      best = p(i);
      out.push_back(i);
    }
  return out;
}

inline PositionSet right_to_left_maxima(const Permutation& p) {
  PositionSet out;
  int best = 0;
  for (Position i = p.size(); i >= 1; --i)
    if (p(i) > best) {
      best = p(i);
      out.push_back(i);
    }
  std::reverse(out.begin(), out.end());
  return out;
}

inline PositionSet right_to_left_minima(const Permutation& p) {
  PositionSet out;
  int best = static_cast<int>(p.size()) + 1;
  for (Position i = p.size(); i >= 1; --i)
    if (p(i) < best) {
      best = p(i);
      out.push_back(i);
    }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<int> values_at(const Permutation& p, std::span<const Position> positions) {
  std::vector<int> out;
  for (auto i : positions) out.push_back(p(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline long long inversions(const Permutation& p) {
  long long total = 0;
  const auto w = p.word();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++total;
  return total;
}

inline long long major_index(const Permutation& p) {
  long long total = 0;
  for (auto i : descent_positions(p)) total += static_cast<long long>(i);
  return total;
}

// Length of the maximal ascending prefix.
inline long long initial_ascending_run(const Permutation& p) {
  Position i = 1;
  while (i < p.size() && p(i) < p(i + 1)) ++i;
  return static_cast<long long>(i);
}

namespace detail {
template <typename Less>
long long longest_monotone(const Permutation& p, Less less) {
  // Patience sorting: tails[k] is the smallest possible tail of a length-(k+1)
  // subsequence.
  std::vector<int> tails;
  for (int x : p.word()) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x, less);
    if (it == tails.end())
      tails.push_back(x);
    else
      *it = x;
  }
  return static_cast<long long>(tails.size());
}
}  // namespace detail

inline long long longest_increasing(const Permutation& p) { return detail::longest_monotone(p, std::less<int>{}); }
inline long long longest_decreasing(const Permutation& p) {
  return detail::longest_monotone(p, std::greater<int>{});
}

inline long long peaks(const Permutation& p) {
  long long c = 0;
  for (Position i = 2; i < p.size(); ++i)
    if (p(i - 1) < p(i) && p(i) > p(i + 1)) ++c;
  return c;
}

inline long long valleys(const Permutation& p) {
  long long c = 0;
  for (Position i = 2; i < p.size(); ++i)
    if (p(i - 1) > p(i) && p(i) < p(i + 1)) ++c;
  return c;
}

// Largest d such that n, n-1, ..., n-d+1 occur left to right as a subsequence.
inline long long zeil(const Permutation& p) {
  int want = static_cast<int>(p.size());
  for (int x : p.word())
    if (x == want) --want;
  return static_cast<long long>(p.size()) - want;
}

// Largest i with p_j > i for every j <= i.
inline long long rank(const Permutation& p) {
  long long best = 0;
  int prefix_min = static_cast<int>(p.size()) + 1;
  for (Position i = 1; i <= p.size(); ++i) {
    prefix_min = std::min(prefix_min, p(i));
    if (prefix_min > static_cast<int>(i))
      best = static_cast<long long>(i);
    else
      break;
  }
  return best;
}

}  // namespace stats

// Number of inversions (i, j) with first coordinate i.
inline long long inv_at(const Permutation& p, Position i) {
  const int pivot = p.at(i);
  long long c = 0;
  for (Position j = i + 1; j <= p.size(); ++j)
    if (p(j) < pivot) ++c;
  return c;
}

// Nearest left-to-right-maximum position not greater than i.
inline Position plmax(const Permutation& p, Position i) {
  p.at(i);  // range check
  Position best_pos = 1;
  int best = p(1);
  for (Position j = 2; j <= i; ++j)
    if (p(j) > best) {
      best = p(j);
      best_pos = j;
    }
  return best_pos;
}

enum class StatKind { integer, position_set, value_set };

inline std::string_view kind_name(StatKind k) {
  switch (k) {
    case StatKind::integer: return "integer";
    case StatKind::position_set: return "position-set";
    case StatKind::value_set: return "value-set";
  }
  return "?";
}

using StatValue = std::variant<long long, std::vector<long long>>;

struct StatDescriptor {
  std::string name;
  StatKind kind;
  std::string description;
  std::function<StatValue(const Permutation&)> evaluator;
  // Non-empty for statistics defined as a sum of vincular pattern counts.
  std::vector<VincularPattern> pattern_terms;
};

// Vincular expressions of the Mahonian statistics. foze'' counts the 31-2
// term twice.
inline std::vector<VincularPattern> mahonian_terms(std::string_view name) {
  if (name == "inv") return parse_patterns({"23-1", "31-2", "32-1", "21"});
  if (name == "maj") return parse_patterns({"1-32", "2-31", "3-21", "21"});
  if (name == "makl") return parse_patterns({"1-32", "2-31", "32-1", "21"});
  if (name == "bast") return parse_patterns({"13-2", "21-3", "32-1", "21"});
  if (name == "foze") return parse_patterns({"21-3", "3-21", "13-2", "21"});
  if (name == "fozepp" || name == "foze''") return parse_patterns({"23-1", "31-2", "31-2", "21"});
  throw InvalidArgument("no vincular expression registered for \"" + std::string(name) + "\"");
}

inline const std::vector<std::string>& mahonian_names() {
  static const std::vector<std::string> names{"inv", "maj", "makl", "bast", "foze", "fozepp"};
  return names;
}

// Immutable name -> descriptor table. Names ending in "_i" resolve to the
// base statistic composed with inversion.
class StatRegistry {
 public:
  StatRegistry();

  const StatDescriptor& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

  static const StatRegistry& instance() {
    static const StatRegistry registry;
    return registry;
  }

 private:
  void add(StatDescriptor d) {
    auto key = d.name;
    table_.emplace(std::move(key), std::move(d));
  }
  std::string canonical(std::string_view name) const {
    if (name == "foze''") return "fozepp";
    if (name == "foze''_i") return "fozepp_i";
    return std::string(name);
  }

  std::map<std::string, StatDescriptor, std::less<>> table_;
};

namespace detail {
inline StatValue as_value(long long x) { return x; }
inline StatValue as_value(const std::vector<int>& v) { return std::vector<long long>(v.begin(), v.end()); }
inline StatValue as_value(const PositionSet& v) { return std::vector<long long>(v.begin(), v.end()); }
}  // namespace detail

inline StatRegistry::StatRegistry() {
  using namespace stats;
  auto integer = [this](std::string name, std::string desc, auto fn) {
    add({std::move(name), StatKind::integer, std::move(desc),
         [fn](const Permutation& p) { return ::permstat::detail::as_value(static_cast<long long>(fn(p))); },
         {}});
  };
  auto positions = [this](std::string name, std::string desc, auto fn) {
    add({std::move(name), StatKind::position_set, std::move(desc),
         [fn](const Permutation& p) { return ::permstat::detail::as_value(fn(p)); }, {}});
  };
  auto values = [this](std::string name, std::string desc, auto fn) {
    add({std::move(name), StatKind::value_set, std::move(desc),
         [fn](const Permutation& p) { return ::permstat::detail::as_value(fn(p)); }, {}});
  };

  positions("Asc", "ascent positions", ascent_positions);
  integer("asc", "number of ascents", [](const Permutation& p) { return ascent_positions(p).size(); });
  values("Atop", "ascent tops", ascent_tops);
  values("Abot", "ascent bottoms", ascent_bottoms);
  positions("Des", "descent positions", descent_positions);
  integer("des", "number of descents", [](const Permutation& p) { return descent_positions(p).size(); });
  values("Dtop", "descent tops", descent_tops);
  values("Dbot", "descent bottoms", descent_bottoms);

  struct Extremum {
    const char* name;
    const char* lower;
    const char* what;
    PositionSet (*fn)(const Permutation&);
  };
  for (const Extremum& e : {Extremum{"Lmax", "lmax", "left-to-right maxima", left_to_right_maxima},
                            Extremum{"Lmin", "lmin", "left-to-right minima", left_to_right_minima},
                            Extremum{"Rmax", "rmax", "right-to-left maxima", right_to_left_maxima},
                            Extremum{"Rmin", "rmin", "right-to-left minima", right_to_left_minima}}) {
    auto fn = e.fn;
    positions(e.name, std::string("positions of ") + e.what, fn);
    values(std::string(e.name) + "l", std::string("entries at ") + e.what,
           [fn](const Permutation& p) { return values_at(p, fn(p)); });
    integer(e.lower, std::string("number of ") + e.what, [fn](const Permutation& p) { return fn(p).size(); });
  }

  integer("inv", "inversion number", inversions);
  integer("maj", "major index (sum of descent positions)", major_index);
  for (const char* name : {"makl", "bast", "foze", "fozepp"}) {
    auto terms = mahonian_terms(name);
    add({name, StatKind::integer, std::string("vincular pattern sum ") + name,
         [terms](const Permutation& p) { return StatValue(pattern_sum(p, terms)); }, terms});
  }

  integer("head", "first entry", [](const Permutation& p) { return p(1); });
  integer("last", "last entry", [](const Permutation& p) { return p(p.size()); });
  integer("lir", "length of the initial ascending run", initial_ascending_run);
  integer("lis", "longest increasing subsequence", longest_increasing);
  integer("lds", "longest decreasing subsequence", longest_decreasing);
  integer("peak", "number of peaks", peaks);
  integer("valley", "number of valleys", valleys);
  integer("zeil", "longest n, n-1, ... subsequence", stats::zeil);
  integer("rank", "largest i with all of the first i entries above i", stats::rank);
}

inline bool StatRegistry::contains(std::string_view name) const {
  const auto key = canonical(name);
  if (table_.count(key)) return true;
  return key.size() > 2 && key.ends_with("_i") && table_.count(key.substr(0, key.size() - 2));
}

inline const StatDescriptor& StatRegistry::get(std::string_view name) const {
  const auto key = canonical(name);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  if (key.size() > 2 && key.ends_with("_i")) {
    // Inverse-composed variants are materialised once, on first use.
    static std::mutex mu;
    static std::map<std::string, StatDescriptor, std::less<>> derived;
    std::lock_guard lock(mu);
    if (auto it = derived.find(key); it != derived.end()) return it->second;
    const auto base = table_.find(key.substr(0, key.size() - 2));
    if (base != table_.end()) {
      auto eval = base->second.evaluator;
      StatDescriptor d{key, base->second.kind, base->second.description + " of the inverse",
                       [eval](const Permutation& p) { return eval(invert(p)); }, {}};
      return derived.emplace(key, std::move(d)).first->second;
    }
  }
  throw InvalidArgument("unknown statistic \"" + std::string(name) + "\"");
}

inline std::vector<std::string> StatRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : table_) out.push_back(k);
  return out;
}

inline StatValue eval_stat(std::string_view name, const Permutation& p) {
  return StatRegistry::instance().get(name).evaluator(p);
}

// Integer-kind statistic; throws for set-kinds.
inline long long eval_int(std::string_view name, const Permutation& p) {
  const auto& d = StatRegistry::instance().get(name);
  if (d.kind != StatKind::integer)
    throw InvalidArgument("statistic \"" + std::string(name) + "\" is " + std::string(kind_name(d.kind)) +
                          ", not integer-valued");
  return std::get<long long>(d.evaluator(p));
}

inline std::string format_stat_value(const StatValue& v) {
  if (auto x = std::get_if<long long>(&v)) return std::to_string(*x);
  const auto& set = std::get<std::vector<long long>>(v);
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set[i]);
  }
  return out + "}";
}

// Integer statistics used by the discovery harness when no pool is given,
// sorted by name.
inline std::vector<std::string> default_pool() {
  std::vector<std::string> pool{"asc",  "des",    "head",   "head_i",  "inv",     "last",  "last_i",
                                "lds",  "lir",    "lir_i",  "lis",     "lmax",    "lmin",  "maj",
                                "peak", "peak_i", "rank",   "rmax",    "rmin",    "valley", "valley_i",
                                "zeil", "zeil_i"};
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace permstat
