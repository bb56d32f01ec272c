#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permstat/bijections.hpp"
#include "permstat/distribution.hpp"
#include "permstat/perm_sets.hpp"
#include "permstat/statistics.hpp"

namespace permstat {

// Label attached to every report; bump when pool statistic definitions change.
inline constexpr std::string_view kPoolVersion = "pool-v1";

// A permutation family (its n is ignored) together with a statistic.
struct Side {
  SetSpec family;
  std::string stat;
};

struct NRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

inline NRange parse_n_range(std::string_view text) {
  auto to_n = [&](std::string_view s) -> std::size_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 4)
      throw InvalidArgument("malformed length \"" + std::string(s) + "\" in range \"" + std::string(text) + "\"");
    return static_cast<std::size_t>(std::stoul(std::string(s)));
  };
  NRange r;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    r.lo = to_n(text.substr(0, dots));
    r.hi = to_n(text.substr(dots + 2));
  } else {
    r.lo = r.hi = to_n(text);
  }
  if (r.lo < 1 || r.lo > r.hi) throw InvalidArgument("invalid length range \"" + std::string(text) + "\"");
  return r;
}

// Value v of the primary statistics whose candidate distributions differ.
struct PartitionWitness {
  long long value = 0;
  QPolynomial left;
  QPolynomial right;
};

// Member whose candidate value changes under the bijection.
struct PreservationWitness {
  Permutation member;
  Permutation image;
  long long before = 0;
  long long after = 0;
};

struct Verdict {
  std::size_t n = 0;
  bool compatible = true;
  std::optional<PartitionWitness> partition;
  std::optional<PreservationWitness> preservation;
};

struct DiscoveryReport {
  std::string candidate;
  std::string pool_version{kPoolVersion};
  std::vector<Verdict> verdicts;

  bool compatible() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.compatible; });
  }
  const Verdict* first_refutation() const {
    for (const auto& v : verdicts)
      if (!v.compatible) return &v;
    return nullptr;
  }
};

namespace detail {

inline std::vector<std::string> sorted_pool(std::vector<std::string> pool) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (const auto& name : pool) {
    const auto& d = StatRegistry::instance().get(name);
    if (d.kind != StatKind::integer) throw InvalidArgument("pool statistic \"" + name + "\" is not integer-valued");
  }
  return pool;
}

// Compatible candidates first, then refuted ones; lexicographic within each.
inline void order_reports(std::vector<DiscoveryReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const DiscoveryReport& a, const DiscoveryReport& b) {
    if (a.compatible() != b.compatible()) return a.compatible();
    return a.candidate < b.candidate;
  });
}

// One pass over a family: primary value -> candidate distribution, per candidate.
inline std::vector<JointDistribution> joint_distributions(const SetSpec& spec, std::string_view primary,
                                                          const std::vector<std::string>& pool, const Guard& guard) {
  const auto& reg = StatRegistry::instance();
  const auto& prim = reg.get(primary);
  if (prim.kind != StatKind::integer)
    throw InvalidArgument("statistic \"" + std::string(primary) + "\" is not integer-valued");
  std::vector<const StatDescriptor*> cands;
  for (const auto& name : pool) cands.push_back(&reg.get(name));
  std::vector<JointDistribution> out(pool.size());
  auto stream = enumerate(spec, guard);
  while (auto p = stream.next()) {
    const auto key = std::get<long long>(prim.evaluator(*p));
    for (std::size_t c = 0; c < cands.size(); ++c)
      out[c][key].add_term(exponent_of(std::get<long long>(cands[c]->evaluator(*p)), cands[c]->name, *p));
  }
  return out;
}

inline std::optional<PartitionWitness> compare_blocks(const JointDistribution& left, const JointDistribution& right) {
  for (const auto& [value, lpoly] : left) {
    auto it = right.find(value);
    if (it == right.end()) continue;
    if (lpoly != it->second) return PartitionWitness{value, lpoly, it->second};
  }
  return std::nullopt;
}

}  // namespace detail

// For each candidate and n: partition both families by their primary
// statistic and require the candidate to be equidistributed on every pair of
// blocks sharing a label.
inline std::vector<DiscoveryReport> refine_partitions(const Side& left, const Side& right,
                                                      std::vector<std::string> pool, NRange range,
                                                      const Guard& guard = {}) {
  pool = detail::sorted_pool(std::move(pool));
  std::vector<DiscoveryReport> reports(pool.size());
  for (std::size_t c = 0; c < pool.size(); ++c) reports[c].candidate = pool[c];
  for (std::size_t n = range.lo; n <= range.hi; ++n) {
    const auto lj = detail::joint_distributions(left.family.with_n(n), left.stat, pool, guard);
    const auto rj = detail::joint_distributions(right.family.with_n(n), right.stat, pool, guard);
    for (std::size_t c = 0; c < pool.size(); ++c) {
      Verdict v{n, true, std::nullopt, std::nullopt};
      if (auto w = detail::compare_blocks(lj[c], rj[c])) {
        v.compatible = false;
        v.partition = std::move(w);
      }
      reports[c].verdicts.push_back(std::move(v));
    }
  }
  detail::order_reports(reports);
  return reports;
}

// For each candidate: is st(pi) == st(f(pi)) for every member, every n?
// The witness is the lexicographically first violating member.
inline std::vector<DiscoveryReport> bijection_invariants(const BijectionExpr& f, const SetSpec& family,
                                                         std::vector<std::string> pool, NRange range,
                                                         const Guard& guard = {}) {
  pool = detail::sorted_pool(std::move(pool));
  const auto& reg = StatRegistry::instance();
  std::vector<const StatDescriptor*> cands;
  for (const auto& name : pool) cands.push_back(&reg.get(name));
  std::vector<DiscoveryReport> reports(pool.size());
  for (std::size_t c = 0; c < pool.size(); ++c) reports[c].candidate = pool[c];

  for (std::size_t n = range.lo; n <= range.hi; ++n) {
    std::vector<Verdict> verdicts(pool.size(), Verdict{n, true, std::nullopt, std::nullopt});
    auto stream = enumerate(family.with_n(n), guard);
    while (auto p = stream.next()) {
      const Permutation image = f(*p);
      for (std::size_t c = 0; c < cands.size(); ++c) {
        if (!verdicts[c].compatible) continue;
        const auto before = std::get<long long>(cands[c]->evaluator(*p));
        const auto after = std::get<long long>(cands[c]->evaluator(image));
        if (before != after) {
          verdicts[c].compatible = false;
          verdicts[c].preservation = PreservationWitness{*p, image, before, after};
        }
      }
    }
    for (std::size_t c = 0; c < pool.size(); ++c) reports[c].verdicts.push_back(std::move(verdicts[c]));
  }
  detail::order_reports(reports);
  return reports;
}

// True when the recorded witness still refutes the candidate, recomputed from
// scratch at that single n and value.
inline bool replay_partition_witness(const Side& left, const Side& right, std::string_view candidate, std::size_t n,
                                     const PartitionWitness& w, const Guard& guard = {}) {
  auto block = [&](const Side& side) {
    QPolynomial poly;
    auto stream = enumerate(side.family.with_n(n), guard);
    while (auto p = stream.next())
      if (eval_int(side.stat, *p) == w.value) poly.add_term(static_cast<std::size_t>(eval_int(candidate, *p)));
    return poly;
  };
  const auto l = block(left);
  const auto r = block(right);
  return l != r && l == w.left && r == w.right;
}

inline bool replay_preservation_witness(const BijectionExpr& f, std::string_view candidate,
                                        const PreservationWitness& w) {
  const auto image = f(w.member);
  const auto before = eval_int(candidate, w.member);
  const auto after = eval_int(candidate, image);
  return image == w.image && before == w.before && after == w.after && before != after;
}

}  // namespace permstat
