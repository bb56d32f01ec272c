// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exit status is non-zero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permstat/permstat.hpp"
#include "support/oracles.hpp"

using namespace permstat;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<int> W(const Permutation& p) { return {p.word().begin(), p.word().end()}; }

std::vector<Permutation> family(const std::vector<int>& classical, int n) {
  std::vector<Permutation> out;
  for (auto& w : oracle::avoiders(n, classical)) out.emplace_back(w);
  return out;
}

std::string runs_text(const std::vector<PositionSet>& runs) {
  std::string s = "[";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    s += i ? ",{" : "{";
    for (std::size_t j = 0; j < runs[i].size(); ++j) s += (j ? "," : "") + std::to_string(runs[i][j]);
    s += "}";
  }
  return s + "]";
}

Check golden_values() {
  Check c;
  const auto pi = parse_permutation("7642135");
  c.expect(theta_prime(pi).to_string() == "7216435", "theta_prime(7642135)");
  c.expect(theta1(pi).to_string() == "((3,2,2),(7,6,5))", "theta1(7642135)");
  c.expect(runs_text(inverse_descent_runs(parse_permutation("7651324"))) == "[{1,2,3,7},{5,6},{4}]",
           "inverse descent runs of 7651324");
  const auto s = parse_permutation("4235167");
  c.expect(reverse(s).to_string() == "7615324", "reverse(4235167)");
  c.expect(complement(s).to_string() == "4653721", "complement(4235167)");
  c.expect(invert(s).to_string() == "5231467", "invert(4235167)");
  return c;
}

Check mahonity() {
  Check c;
  for (int n = 1; n <= 8; ++n) {
    const auto expected = oracle::q_factorial(n);
    for (const auto& st : mahonian_names())
      c.expect(distribution(all_permutations(n), st).coeffs() == expected, st + " at n=" + std::to_string(n));
  }
  return c;
}

Check catalan_counts() {
  Check c;
  for (const auto& sigma : oracle::all_words(3))
    for (int n = 1; n <= 10; ++n) {
      const auto pat = VincularPattern(Permutation(sigma), {});
      c.expect(count_members(avoiders({pat}, n)) == oracle::catalan(n), pat.to_string() + " at n=" + std::to_string(n));
    }
  return c;
}

// Position sets of right-to-left extrema are compared literally. Members
// where they move are counted, alongside the entry sets at those positions.
Check maj_makl() {
  Check c;
  std::size_t total = 0, moved = 0, entries_differ = 0;
  std::string first_moved;
  for (int n = 1; n <= 9; ++n) {
    std::set<Permutation> images;
    const auto members = family({2, 3, 1}, n);
    for (const auto& p : members) {
      const auto t = theta(p);
      ++total;
      c.expect(oracle::major_index(W(p)) == eval_int("makl", t), "maj/makl at " + p.to_string());
      c.expect(oracle::avoids(W(t), {2, 3, 1}), "image leaves Av(231) at " + p.to_string());
      if (stats::right_to_left_maxima(p) != stats::right_to_left_maxima(t) ||
          stats::right_to_left_minima(p) != stats::right_to_left_minima(t)) {
        if (moved++ == 0) first_moved = p.to_string() + " -> " + t.to_string();
      }
      if (eval_stat("Rmaxl", p) != eval_stat("Rmaxl", t) || eval_stat("Rminl", p) != eval_stat("Rminl", t))
        ++entries_differ;
      images.insert(t);
    }
    c.expect(images.size() == members.size(), "theta not injective at n=" + std::to_string(n));
  }
  c.expect(moved == 0, "Rmax/Rmin position sets differ on " + std::to_string(moved) + " of " + std::to_string(total) +
                           " members (first: " + first_moved + "); maj=makl and bijectivity hold, entry sets differ on " +
                           std::to_string(entries_differ));
  return c;
}

Check bast_foze() {
  Check c;
  for (int n = 1; n <= 9; ++n) {
    std::set<Permutation> images;
    const auto members = family({3, 1, 2}, n);
    std::vector<long long> left, right;
    for (const auto& p : members) {
      const auto t = big_theta(p);
      c.expect(eval_int("bast", p) == eval_int("foze", t), "bast/foze at " + p.to_string());
      c.expect(oracle::avoids(W(t), {3, 1, 2}), "image leaves Av(312) at " + p.to_string());
      images.insert(t);
      left.push_back(eval_int("bast", p));
      right.push_back(eval_int("foze", p));
    }
    c.expect(images.size() == members.size(), "big_theta not injective at n=" + std::to_string(n));
    const auto spec = avoiders("3-1-2", n);
    const auto lp = distribution(spec, "bast"), rp = distribution(spec, "foze");
    c.expect(equidistributed(lp, rp), "distributions differ at n=" + std::to_string(n));
    c.expect(lp.coeffs() == oracle::histogram(left) && rp.coeffs() == oracle::histogram(right),
             "engine disagrees with histogram at n=" + std::to_string(n));
  }
  return c;
}

Check fozepp_inv() {
  Check c;
  for (int n = 1; n <= 9; ++n) {
    std::set<Permutation> images;
    const auto members = family({3, 1, 2}, n);
    for (const auto& p : members) {
      const auto t = psi(p);
      c.expect(eval_int("fozepp", p) == oracle::inversions(W(t)), "fozepp/inv at " + p.to_string());
      c.expect(oracle::avoids(W(t), {3, 2, 1}), "psi image contains 321 at " + p.to_string());
      images.insert(t);
    }
    c.expect(images.size() == members.size(), "psi not injective at n=" + std::to_string(n));
  }
  return c;
}

Check closed_form_lemmas() {
  Check c;
  for (int n = 1; n <= 9; ++n) {
    for (const auto& p : family({2, 3, 1}, n))
      c.expect(closed_form("adj213_on_Av231", p) == oracle::count(W(p), {2, 1, 3}, {2}), "2-13 at " + p.to_string());
    for (const auto& p : family({3, 2, 1}, n))
      c.expect(closed_form("inv_on_Av321", p) == oracle::inversions(W(p)), "inv at " + p.to_string());
    for (const auto& p : family({3, 1, 2}, n)) {
      const auto w = W(p);
      c.expect(closed_form("adj231_on_Av312", p) == oracle::count(w, {2, 3, 1}, {1}), "23-1 at " + p.to_string());
      c.expect(closed_form("des_on_Av312", p) == oracle::count(w, {2, 1}, {1}), "des at " + p.to_string());
      const auto fozepp = oracle::count(w, {2, 3, 1}, {1}) + 2 * oracle::count(w, {3, 1, 2}, {1}) +
                          oracle::count(w, {2, 1}, {1});
      c.expect(closed_form("fozepp_on_Av312", p) == fozepp, "fozepp at " + p.to_string());
      for (Position i = 1; i <= p.size(); ++i) {
        long long inv = 0;
        for (Position j = i + 1; j <= p.size(); ++j) inv += w[j - 1] < w[i - 1];
        c.expect(closed_form("inv_at_on_Av312", p, i) == inv, "inv_at at " + p.to_string());
      }
    }
  }
  return c;
}

Check algorithm_lemmas() {
  Check c;
  for (int n = 1; n <= 9; ++n)
    for (const auto& pr : oracle::consistent_pairs(n)) {
      const ConsistentPair pair{pr.c, pr.m};
      StackTrace trace;
      const auto tau = theta2(pair, &trace);
      const auto tag = pair.to_string();
      c.expect(tau.size() == static_cast<std::size_t>(n), "length at " + tag);
      c.expect(trace.monotonicity_violations == 0, "stack A order at " + tag);
      c.expect(oracle::avoids(W(tau), {2, 3, 1}), "231 in output at " + tag);
      std::vector<int> tops(pr.m.begin() + 1, pr.m.end());
      std::sort(tops.begin(), tops.end());
      c.expect(stats::ascent_tops(tau) == tops, "Atop at " + tag);
      std::vector<int> lens;
      for (const auto& r : inverse_descent_runs(tau)) lens.push_back(static_cast<int>(r.size()));
      c.expect(lens == pr.c, "run lengths at " + tag);
    }
  return c;
}

// theta1 reads ascent positions and theta2 places ascent tops, so the pair
// round trip goes through the position-based construction, and theta2 is
// checked against the (run lengths, Atop) reading of its output.
Check theta_prime_bijective() {
  Check c;
  for (int n = 1; n <= 10; ++n) {
    for (const auto& pr : oracle::consistent_pairs(n)) {
      const ConsistentPair pair{pr.c, pr.m};
      c.expect(theta1(from_ascent_data(pair)) == pair, "theta1 round trip at " + pair.to_string());
      const auto tau = theta2(pair);
      std::vector<int> lens, m{n};
      for (const auto& r : inverse_descent_runs(tau)) lens.push_back(static_cast<int>(r.size()));
      const auto tops = stats::ascent_tops(tau);
      m.insert(m.end(), tops.rbegin(), tops.rend());
      c.expect((ConsistentPair{lens, m}) == pair, "theta2 round trip at " + pair.to_string());
    }
    std::set<Permutation> images;
    std::size_t members = 0;
    for (const auto& w : oracle::avoiders(n, {2, 3, 1})) {
      if (w[0] != n) continue;
      ++members;
      images.insert(theta_prime(Permutation(w)));
    }
    c.expect(images.size() == members && members == oracle::catalan(n - 1),
             "theta_prime not injective at n=" + std::to_string(n));
  }
  return c;
}

Check discovery_smoke() {
  Check c;
  const auto f = BijectionExpr::parse("big_theta");
  const auto reports = bijection_invariants(f, avoiders("3-1-2", 1), default_pool(), {1, 7});
  std::set<std::string> preserved;
  std::size_t replayable = 0;
  for (const auto& r : reports) {
    if (r.compatible()) preserved.insert(r.candidate);
    if (const auto* v = r.first_refutation(); v && v->preservation)
      replayable += replay_preservation_witness(f, r.candidate, *v->preservation);
  }
  for (auto name : {"head", "last", "lmax", "lmin"}) c.expect(preserved.count(name) == 1, std::string(name) + " refuted");
  c.expect(replayable > 0, "no replayable refutation");
  return c;
}

Check equivariance() {
  Check c;
  std::vector<VincularPattern> pats;
  for (int m = 1; m <= 3; ++m)
    for (const auto& w : oracle::all_words(m))
      for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
        std::vector<std::size_t> adj;
        for (int j = 1; j < m; ++j)
          if (mask & (1u << (j - 1))) adj.push_back(j);
        pats.emplace_back(Permutation(w), adj);
      }
  for (int n = 1; n <= 7; ++n)
    for (const auto& w : oracle::all_words(n)) {
      const Permutation p(w);
      for (const auto& pat : pats) {
        const auto k = count_occurrences(p, pat);
        c.expect(count_occurrences(reverse(p), transform_pattern(pat, TrivialBijection::reverse)) == k,
                 "reverse " + pat.to_string() + " at " + p.to_string());
        c.expect(count_occurrences(complement(p), transform_pattern(pat, TrivialBijection::complement)) == k,
                 "complement " + pat.to_string() + " at " + p.to_string());
      }
    }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"golden worked-example values", golden_values},
      {"Mahonity of inv, maj, makl, bast, foze, fozepp (n <= 8)", mahonity},
      {"Catalan counts for all length-3 patterns (n <= 10)", catalan_counts},
      {"maj -> makl via theta on Av(231) (n <= 9)", maj_makl},
      {"bast -> foze via big_theta on Av(312) (n <= 9)", bast_foze},
      {"fozepp -> inv via psi, Av(312) to Av(321) (n <= 9)", fozepp_inv},
      {"closed forms against brute force (n <= 9)", closed_form_lemmas},
      {"two-stack construction lemmas over all pairs (n <= 9)", algorithm_lemmas},
      {"theta_prime bijectivity and pair round trips (n <= 10)", theta_prime_bijective},
      {"discovery smoke test: big_theta on av:3-1-2 (n = 1..7)", discovery_smoke},
      {"reverse/complement equivariance of pattern counts (n <= 7)", equivariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (result.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " [" << timing
              << "]";
    if (!result.ok) std::cout << " -- " << result.detail;
    std::cout << '\n';
    failures += !result.ok;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
