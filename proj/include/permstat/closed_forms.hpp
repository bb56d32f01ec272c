#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/bijections.hpp"
#include "permstat/error.hpp"
#include "permstat/perm_sets.hpp"
#include "permstat/statistics.hpp"

namespace permstat {

// Class-restricted formulas for pattern and inversion counts. Each one is
// valid only on its avoidance class; entry points verify membership unless
// called with Domain::trusted.
namespace closed {

namespace detail {
inline long long lmax_excess(const Permutation& p) {
  long long s = 0;
  for (auto i : stats::left_to_right_maxima(p)) s += p(i) - static_cast<long long>(i);
  return s;
}
}  // namespace detail

// Occurrences of 2-13 on Av(231): n - rmax - rmin + 1.
inline long long adj213_on_av231(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "2-3-1", "adj213_on_Av231");
  return static_cast<long long>(p.size()) - static_cast<long long>(stats::right_to_left_maxima(p).size()) -
         static_cast<long long>(stats::right_to_left_minima(p).size()) + 1;
}

// inv on Av(321): every inversion starts at a left-to-right maximum i, which
// contributes p_i - i.
inline long long inv_on_av321(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-2-1", "inv_on_Av321");
  return detail::lmax_excess(p);
}

// inv(p, i) on Av(312) through the previous left-to-right maximum j:
// inv(p, j) - (i - j), with inv(p, j) = p_j - j since j is a maximum.
inline long long inv_at_on_av312(const Permutation& p, Position i, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "inv_at_on_Av312");
  const auto j = plmax(p, i);
  return (p(j) - static_cast<long long>(j)) - static_cast<long long>(i - j);
}

// Occurrences of 23-1 on Av(312).
inline long long adj231_on_av312(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "adj231_on_Av312");
  return detail::lmax_excess(p) - static_cast<long long>(p.size()) +
         static_cast<long long>(stats::left_to_right_maxima(p).size());
}

// des on Av(312): y is a descent iff y+1 is not a left-to-right maximum.
inline long long des_on_av312(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "des_on_Av312");
  return static_cast<long long>(p.size()) - static_cast<long long>(stats::left_to_right_maxima(p).size());
}

// foze'' on Av(312): the 31-2 terms vanish, leaving 23-1 + 21.
inline long long fozepp_on_av312(const Permutation& p, Domain domain = Domain::checked) {
  if (domain == Domain::checked) require_avoids(p, "3-1-2", "fozepp_on_Av312");
  return detail::lmax_excess(p);
}

}  // namespace closed

struct ClosedFormInfo {
  std::string name;
  std::string avoids;  // classical pattern defining the precondition class
  std::string computes;
  bool takes_position = false;
};

inline const std::vector<ClosedFormInfo>& closed_forms() {
  static const std::vector<ClosedFormInfo> table{
      {"adj213_on_Av231", "2-3-1", "occurrences of 2-13", false},
      {"inv_on_Av321", "3-2-1", "inv", false},
      {"inv_at_on_Av312", "3-1-2", "inv_at(i)", true},
      {"adj231_on_Av312", "3-1-2", "occurrences of 23-1", false},
      {"des_on_Av312", "3-1-2", "des (occurrences of 21)", false},
      {"fozepp_on_Av312", "3-1-2", "fozepp", false},
  };
  return table;
}

// Dispatch by name; `position` is required by inv_at_on_Av312 only.
inline long long closed_form(std::string_view name, const Permutation& p, std::optional<Position> position = {},
                             Domain domain = Domain::checked) {
  if (name == "adj213_on_Av231") return closed::adj213_on_av231(p, domain);
  if (name == "inv_on_Av321") return closed::inv_on_av321(p, domain);
  if (name == "adj231_on_Av312") return closed::adj231_on_av312(p, domain);
  if (name == "des_on_Av312") return closed::des_on_av312(p, domain);
  if (name == "fozepp_on_Av312") return closed::fozepp_on_av312(p, domain);
  if (name == "inv_at_on_Av312") {
    if (!position) throw InvalidArgument("inv_at_on_Av312 needs a position");
    p.at(*position);
    return closed::inv_at_on_av312(p, *position, domain);
  }
  throw InvalidArgument("unknown closed form \"" + std::string(name) + "\"");
}

}  // namespace permstat
