#pragma once

#include <cstdint>
#include <algorithm>
#include <exception>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "permstat/error.hpp"
#include "permstat/perm_sets.hpp"
#include "permstat/statistics.hpp"

namespace permstat {

// Polynomial in q with non-negative integer coefficients; coeffs()[x] is the
// coefficient of q^x. Trailing zeros are trimmed. Arithmetic throws
// OverflowError instead of wrapping.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<std::uint64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static QPolynomial one() { return QPolynomial({1}); }
  // [k]_q = 1 + q + ... + q^{k-1}
  static QPolynomial q_integer(std::size_t k) { return QPolynomial(std::vector<std::uint64_t>(k, 1)); }

  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::uint64_t coeff(std::size_t x) const noexcept { return x < coeffs_.size() ? coeffs_[x] : 0; }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : coeffs_) s = checked_add(s, c);
    return s;
  }

  void add_term(std::size_t exponent, std::uint64_t count = 1) {
    if (count == 0) return;
    if (exponent >= coeffs_.size()) coeffs_.resize(exponent + 1, 0);
    coeffs_[exponent] = checked_add(coeffs_[exponent], count);
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    for (std::size_t x = 0; x < o.coeffs_.size(); ++x) add_term(x, o.coeffs_[x]);
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }

  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
    return QPolynomial(std::move(out));
  }

  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  // "1 + 2q + 2q^2 + q^3"; the zero polynomial renders as "0".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t x = 0; x < coeffs_.size(); ++x) {
      const auto c = coeffs_[x];
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      if (x == 0) {
        out += std::to_string(c);
        continue;
      }
      if (c != 1) out += std::to_string(c);
      out += 'q';
      if (x > 1) out += '^' + std::to_string(x);
    }
    return out;
  }

 private:
  static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a) throw OverflowError("q-polynomial coefficient overflow");
    return a + b;
  }
  static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
      throw OverflowError("q-polynomial coefficient overflow");
    return a * b;
  }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<std::uint64_t> coeffs_;
};

// [n]_q! = [1]_q [2]_q ... [n]_q
inline QPolynomial q_factorial(std::size_t n) {
  if (n == 0) throw InvalidArgument("q_factorial is defined for n >= 1");
  QPolynomial out = QPolynomial::one();
  for (std::size_t k = 2; k <= n; ++k) out = out * QPolynomial::q_integer(k);
  return out;
}

inline bool equidistributed(const QPolynomial& a, const QPolynomial& b) { return a == b; }

struct DistributionOptions {
  Guard guard{};
  // Worker threads; the stream is split by first entry, each worker taking
  // every threads-th first value.
  unsigned threads = 1;
};

namespace detail {

inline std::size_t exponent_of(long long value, std::string_view stat, const Permutation& p) {
  if (value < 0)
    throw DomainError("statistic \"" + std::string(stat) + "\" is negative on " + p.to_string(), p.to_string());
  return static_cast<std::size_t>(value);
}

// Admissible first entries of the family.
inline std::vector<int> first_values(const SetSpec& spec) {
  if (spec.kind == SetKind::av_prime_231) return {static_cast<int>(spec.n)};
  std::vector<int> out;
  for (int v = 1; v <= static_cast<int>(spec.n); ++v) out.push_back(v);
  return out;
}

template <typename PerShard, typename Merge>
void fan_out(const SetSpec& spec, unsigned threads, PerShard&& per_shard, Merge&& merge) {
  const auto firsts = first_values(spec);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(firsts.size())));
  using Result = decltype(per_shard(std::vector<int>{}));
  std::vector<std::vector<int>> shards(threads);
  for (std::size_t i = 0; i < firsts.size(); ++i) shards[i % threads].push_back(firsts[i]);
  std::vector<Result> results(threads);
  if (threads == 1) {
    results[0] = per_shard(shards[0]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t)
      workers.emplace_back([&, t] {
        try {
          results[t] = per_shard(shards[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (auto& r : results) merge(r);
}

}  // namespace detail

// Sum over the family of q^{st(pi)}.
inline QPolynomial distribution(const SetSpec& spec, std::string_view stat, const DistributionOptions& opts = {}) {
  const auto& desc = StatRegistry::instance().get(stat);
  if (desc.kind != StatKind::integer)
    throw InvalidArgument("distribution needs an integer statistic; \"" + std::string(stat) + "\" is " +
                          std::string(kind_name(desc.kind)));
  opts.guard.check(spec);
  QPolynomial total;
  detail::fan_out(
      spec, opts.threads,
      [&](const std::vector<int>& firsts) {
        QPolynomial part;
        for (int first : firsts) {
          PermutationStream stream(spec, {first});
          while (auto p = stream.next())
            part.add_term(detail::exponent_of(std::get<long long>(desc.evaluator(*p)), stat, *p));
        }
        return part;
      },
      [&](const QPolynomial& part) { total += part; });
  return total;
}

// value of `primary` -> distribution of `secondary` over members with that value.
using JointDistribution = std::map<long long, QPolynomial>;

inline JointDistribution joint_distribution(const SetSpec& spec, std::string_view primary, std::string_view secondary,
                                            const Guard& guard = {}) {
  const auto& a = StatRegistry::instance().get(primary);
  const auto& b = StatRegistry::instance().get(secondary);
  for (const auto* d : {&a, &b})
    if (d->kind != StatKind::integer)
      throw InvalidArgument("statistic \"" + d->name + "\" is not integer-valued");
  JointDistribution out;
  auto stream = enumerate(spec, guard);
  while (auto p = stream.next()) {
    const auto key = std::get<long long>(a.evaluator(*p));
    out[key].add_term(detail::exponent_of(std::get<long long>(b.evaluator(*p)), secondary, *p));
  }
  return out;
}

}  // namespace permstat
