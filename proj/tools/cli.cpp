#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "permstat/permstat.hpp"

namespace permstat::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { plain, json, csv };

struct Common {
  std::string format = "plain";
  std::uint64_t max_members = 0;  // 0: defaults / environment
  std::string cache_dir;
  unsigned threads = 1;

  Format fmt() const {
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    return Format::plain;
  }
  Guard guard() const { return max_members ? Guard::with_limit(max_members) : Guard::from_environment(); }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}));
  cmd->add_option("--max-members", c.max_members,
                  "Override the enumeration guard (member count); also PERMSTAT_MAX_MEMBERS");
  cmd->add_option("--cache-dir", c.cache_dir, "Directory for cached set cardinalities (JSON)");
  cmd->add_option("--threads", c.threads, "Worker threads for distributions")->check(CLI::Range(1u, 256u));
}

Json envelope(std::string_view command, Json inputs, Json result) {
  Json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(result);
  return j;
}

Json poly_json(const QPolynomial& p) {
  Json j;
  j["coeffs"] = p.coeffs();
  return j;
}

Json stat_value_json(const StatValue& v) {
  if (auto x = std::get_if<long long>(&v)) return *x;
  return std::get<std::vector<long long>>(v);
}

// "av:2-3-1:maj" -> (family, statistic); the statistic follows the last ':'.
Side parse_side(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw InvalidArgument("expected <set>:<stat>, got \"" + text + "\"");
  Side side{parse_set_spec(text.substr(0, colon), 1), text.substr(colon + 1)};
  StatRegistry::instance().get(side.stat);
  return side;
}

std::vector<std::string> parse_pool(const std::string& text) {
  if (text.empty() || text == "default") return default_pool();
  std::vector<std::string> pool;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) pool.push_back(item);
  return pool;
}

std::string side_text(const Side& s) { return s.family.to_string() + ":" + s.stat; }

std::string range_text(NRange r) { return std::to_string(r.lo) + ".." + std::to_string(r.hi); }

// Cardinality cache: <dir>/counts.json maps "<spec>@<n>" to a member count.
std::optional<std::uint64_t> cached_count(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(std::filesystem::path(dir) / "counts.json");
  if (!in) return std::nullopt;
  try {
    const auto j = Json::parse(in);
    if (j.contains(key)) return j.at(key).get<std::uint64_t>();
  } catch (const Json::exception&) {
  }
  return std::nullopt;
}

void store_count(const std::string& dir, const std::string& key, std::uint64_t count) {
  if (dir.empty()) return;
  const auto path = std::filesystem::path(dir) / "counts.json";
  std::filesystem::create_directories(dir);
  Json j = Json::object();
  if (std::ifstream in(path); in) {
    try {
      j = Json::parse(in);
    } catch (const Json::exception&) {
      j = Json::object();
    }
  }
  j[key] = count;
  std::ofstream(path) << j.dump(2) << '\n';
}

std::string pair_text(const ConsistentPair& p) { return p.to_string(); }

// "3,2,2;7,6,5"
ConsistentPair parse_pair(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw InvalidArgument("expected --pair c1,c2,...;m1,m2,...");
  auto seq = [&](const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9)
        throw InvalidArgument("malformed entry \"" + item + "\" in pair \"" + text + "\"");
      v.push_back(std::stoi(item));
    }
    return v;
  };
  return validate_pair(seq(text.substr(0, semi)), seq(text.substr(semi + 1)));
}

void emit_reports(std::ostream& out, Format fmt, std::string_view command, Json inputs,
                  const std::vector<DiscoveryReport>& reports, bool invariants) {
  if (fmt == Format::json) {
    Json arr = Json::array();
    for (const auto& r : reports) {
      Json jr;
      jr["candidate"] = r.candidate;
      jr["pool_version"] = r.pool_version;
      jr["verdict"] = r.compatible() ? (invariants ? "preserved" : "compatible") : "refuted";
      Json per_n = Json::array();
      for (const auto& v : r.verdicts) {
        Json jv;
        jv["n"] = v.n;
        jv["compatible"] = v.compatible;
        if (v.partition) {
          jv["witness"] = {{"value", v.partition->value},
                           {"left", poly_json(v.partition->left)},
                           {"right", poly_json(v.partition->right)}};
        }
        if (v.preservation) {
          jv["witness"] = {{"perm", v.preservation->member.to_string()},
                           {"image", v.preservation->image.to_string()},
                           {"before", v.preservation->before},
                           {"after", v.preservation->after}};
        }
        per_n.push_back(std::move(jv));
      }
      jr["per_n"] = std::move(per_n);
      arr.push_back(std::move(jr));
    }
    out << envelope(command, std::move(inputs), std::move(arr)).dump(2) << '\n';
    return;
  }
  if (fmt == Format::csv) out << "candidate,verdict,n,witness\n";
  for (const auto& r : reports) {
    const auto* bad = r.first_refutation();
    const std::string verdict = bad ? "refuted" : (invariants ? "preserved" : "compatible");
    std::string witness;
    if (bad && bad->preservation) {
      const auto& w = *bad->preservation;
      witness = w.member.to_string() + " -> " + w.image.to_string() + " (" + std::to_string(w.before) + " vs " +
                std::to_string(w.after) + ")";
    } else if (bad && bad->partition) {
      const auto& w = *bad->partition;
      witness = "value " + std::to_string(w.value) + ": " + w.left.to_string() + " vs " + w.right.to_string();
    }
    if (fmt == Format::csv) {
      out << r.candidate << ',' << verdict << ',' << (bad ? std::to_string(bad->n) : "") << ",\"" << witness
          << "\"\n";
    } else {
      out << r.candidate << ' ' << verdict;
      if (bad) out << " n=" << bad->n << " witness " << witness;
      out << '\n';
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation statistics, vincular patterns and equidistribution bijections", "permstat"};
  app.require_subcommand(1);
  Common common;

  std::string stat_name, perm_text, bijection, pair_text_in, set_text, n_text, left_text, right_text, pool_text;
  std::size_t n_value = 0;
  bool count_only = false;

  auto* stat_cmd = app.add_subcommand("stat", "Evaluate a statistic on a permutation");
  stat_cmd->add_option("--stat", stat_name, "Statistic name")->required();
  stat_cmd->add_option("--perm", perm_text, "Permutation (digits for n <= 9, else comma-separated)")->required();
  add_common(stat_cmd, common);

  auto* map_cmd = app.add_subcommand("map", "Apply a bijection");
  map_cmd->add_option("--bijection", bijection, "Bijection name or composition (c∘r∘theta)")->required();
  map_cmd->add_option("--perm", perm_text, "Input permutation");
  map_cmd->add_option("--pair", pair_text_in, "Consistent pair for theta2: c1,...,ck;m1,...,mk");
  add_common(map_cmd, common);

  auto* enum_cmd = app.add_subcommand("enumerate", "List the members of a set");
  enum_cmd->add_option("--set", set_text, "all | av:<p1>[,<p2>...] | avp:231")->required();
  enum_cmd->add_option("--n", n_value, "Length")->required()->check(CLI::Range(1, 64));
  enum_cmd->add_flag("--count", count_only, "Print only the number of members");
  add_common(enum_cmd, common);

  auto* dist_cmd = app.add_subcommand("dist", "Distribution polynomial of a statistic over a set");
  dist_cmd->add_option("--set", set_text, "Set spec")->required();
  dist_cmd->add_option("--n", n_value, "Length")->required()->check(CLI::Range(1, 64));
  dist_cmd->add_option("--stat", stat_name, "Statistic name")->required();
  add_common(dist_cmd, common);

  auto* eq_cmd = app.add_subcommand("equidist", "Compare two distributions for each n in a range");
  eq_cmd->add_option("--left", left_text, "<set>:<stat>")->required();
  eq_cmd->add_option("--right", right_text, "<set>:<stat>")->required();
  eq_cmd->add_option("--n", n_text, "Length or range a..b")->required();
  add_common(eq_cmd, common);

  auto* disc_cmd = app.add_subcommand("discover", "Search for statistics compatible with an equidistribution");
  disc_cmd->require_subcommand(1);
  auto* inv_cmd = disc_cmd->add_subcommand("invariants", "Pool statistics preserved by a bijection");
  inv_cmd->add_option("--bijection", bijection, "Bijection expression")->required();
  inv_cmd->add_option("--set", set_text, "Set spec")->required();
  inv_cmd->add_option("--n", n_text, "Length or range a..b")->required();
  inv_cmd->add_option("--pool", pool_text, "Comma-separated statistics (default pool if omitted)");
  add_common(inv_cmd, common);
  auto* ref_cmd = disc_cmd->add_subcommand("refine", "Pool statistics equidistributed on matching partition blocks");
  ref_cmd->add_option("--left", left_text, "<set>:<stat>")->required();
  ref_cmd->add_option("--right", right_text, "<set>:<stat>")->required();
  ref_cmd->add_option("--n", n_text, "Length or range a..b")->required();
  ref_cmd->add_option("--pool", pool_text, "Comma-separated statistics (default pool if omitted)");
  add_common(ref_cmd, common);

  std::vector<const char*> argv{"permstat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const Format fmt = common.fmt();
  try {
    if (*stat_cmd) {
      const auto perm = parse_permutation(perm_text);
      const auto& desc = StatRegistry::instance().get(stat_name);
      const auto value = desc.evaluator(perm);
      if (fmt == Format::json)
        out << envelope("stat", {{"stat", desc.name}, {"perm", perm.to_string()}}, stat_value_json(value)).dump(2)
            << '\n';
      else if (fmt == Format::csv)
        out << "stat,perm,value\n" << desc.name << ',' << perm.to_string() << ",\"" << format_stat_value(value)
            << "\"\n";
      else
        out << format_stat_value(value) << '\n';
      return kOk;
    }

    if (*map_cmd) {
      Json inputs{{"bijection", bijection}};
      Json result;
      std::string plain;
      if (bijection == "theta2") {
        if (pair_text_in.empty()) throw InvalidArgument("theta2 needs --pair c1,...,ck;m1,...,mk");
        const auto pair = parse_pair(pair_text_in);
        const auto image = theta2(pair);
        inputs["pair"] = {{"c", pair.c}, {"m", pair.m}};
        plain = image.to_string();
        result = plain;
      } else {
        if (perm_text.empty()) throw InvalidArgument("--perm is required for " + bijection);
        const auto perm = parse_permutation(perm_text);
        inputs["perm"] = perm.to_string();
        if (bijection == "theta1") {
          const auto pair = theta1(perm);
          plain = pair_text(pair);
          result = {{"c", pair.c}, {"m", pair.m}};
        } else {
          const auto image = BijectionExpr::parse(bijection)(perm);
          plain = image.to_string();
          result = plain;
        }
      }
      if (fmt == Format::json)
        out << envelope("map", std::move(inputs), std::move(result)).dump(2) << '\n';
      else if (fmt == Format::csv)
        out << "bijection,input,image\n\"" << bijection << "\",\"" << (perm_text.empty() ? pair_text_in : perm_text)
            << "\",\"" << plain << "\"\n";
      else
        out << plain << '\n';
      return kOk;
    }

    if (*enum_cmd) {
      const auto spec = parse_set_spec(set_text, n_value);
      Json inputs{{"set", spec.to_string()}, {"n", n_value}, {"count", count_only}};
      if (count_only) {
        const std::string key = spec.to_string() + "@" + std::to_string(n_value);
        std::uint64_t count;
        if (auto hit = cached_count(common.cache_dir, key)) {
          count = *hit;
        } else {
          count = count_members(spec, common.guard());
          store_count(common.cache_dir, key, count);
        }
        if (fmt == Format::json)
          out << envelope("enumerate", std::move(inputs), count).dump(2) << '\n';
        else if (fmt == Format::csv)
          out << "count\n" << count << '\n';
        else
          out << count << '\n';
        return kOk;
      }
      auto stream = enumerate(spec, common.guard());
      if (fmt == Format::json) {
        Json members = Json::array();
        while (auto p = stream.next()) members.push_back(p->to_string());
        out << envelope("enumerate", std::move(inputs), std::move(members)).dump(2) << '\n';
      } else {
        if (fmt == Format::csv) out << "perm\n";
        while (auto p = stream.next()) {
          if (fmt == Format::csv && p->size() > 9)
            out << '"' << p->to_string() << "\"\n";
          else
            out << p->to_string() << '\n';
        }
      }
      return kOk;
    }

    if (*dist_cmd) {
      const auto spec = parse_set_spec(set_text, n_value);
      DistributionOptions opts{common.guard(), common.threads};
      const auto poly = distribution(spec, stat_name, opts);
      if (fmt == Format::json) {
        out << envelope("dist", {{"set", spec.to_string()}, {"n", n_value}, {"stat", stat_name}}, poly_json(poly))
                   .dump(2)
            << '\n';
      } else if (fmt == Format::csv) {
        out << "exponent,count\n";
        for (std::size_t x = 0; x < poly.coeffs().size(); ++x) out << x << ',' << poly.coeffs()[x] << '\n';
      } else {
        out << poly.to_string() << '\n';
      }
      return kOk;
    }

    if (*eq_cmd) {
      const auto left = parse_side(left_text);
      const auto right = parse_side(right_text);
      const auto range = parse_n_range(n_text);
      DistributionOptions opts{common.guard(), common.threads};
      bool all_equal = true;
      Json per_n = Json::array();
      if (fmt == Format::csv) out << "n,equidistributed,left,right\n";
      for (std::size_t n = range.lo; n <= range.hi; ++n) {
        const auto lp = distribution(left.family.with_n(n), left.stat, opts);
        const auto rp = distribution(right.family.with_n(n), right.stat, opts);
        const bool eq = equidistributed(lp, rp);
        all_equal = all_equal && eq;
        if (fmt == Format::json)
          per_n.push_back({{"n", n}, {"equidistributed", eq}, {"left", poly_json(lp)}, {"right", poly_json(rp)}});
        else if (fmt == Format::csv)
          out << n << ',' << (eq ? "true" : "false") << ",\"" << lp.to_string() << "\",\"" << rp.to_string()
              << "\"\n";
        else
          out << "n=" << n << ' ' << (eq ? "true" : "false") << '\n';
      }
      if (fmt == Format::json)
        out << envelope("equidist",
                        {{"left", side_text(left)}, {"right", side_text(right)}, {"n", range_text(range)}},
                        {{"equidistributed", all_equal}, {"per_n", per_n}})
                   .dump(2)
            << '\n';
      return all_equal ? kOk : kNotEquidistributed;
    }

    if (*inv_cmd) {
      const auto expr = BijectionExpr::parse(bijection);
      const auto family = parse_set_spec(set_text, 1);
      const auto range = parse_n_range(n_text);
      const auto reports = bijection_invariants(expr, family, parse_pool(pool_text), range, common.guard());
      emit_reports(out, fmt, "discover invariants",
                   {{"bijection", bijection},
                    {"set", family.to_string()},
                    {"n", range_text(range)},
                    {"pool_version", kPoolVersion}},
                   reports, true);
      return kOk;
    }

    if (*ref_cmd) {
      const auto left = parse_side(left_text);
      const auto right = parse_side(right_text);
      const auto range = parse_n_range(n_text);
      const auto reports = refine_partitions(left, right, parse_pool(pool_text), range, common.guard());
      emit_reports(out, fmt, "discover refine",
                   {{"left", side_text(left)},
                    {"right", side_text(right)},
                    {"n", range_text(range)},
                    {"pool_version", kPoolVersion}},
                   reports, false);
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace permstat::cli
