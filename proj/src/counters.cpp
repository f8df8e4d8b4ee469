#include "gausslab/counters.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "count_engine.hpp"

namespace gausslab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_system(const CongruenceSystem& sys) {
  if (sys.pair_count < 1) throw std::invalid_argument("pair_count must be >= 1");
  std::size_t vars = static_cast<std::size_t>(2 * sys.pair_count);
  if (sys.signs.size() != vars) {
    throw std::invalid_argument("signs must have 2*pair_count entries");
  }
  if (sys.functions.empty()) throw std::invalid_argument("system needs at least one equation");
  if (sys.targets.size() != sys.functions.size()) {
    throw std::invalid_argument("targets must match the equation count");
  }
  if (sys.domain.empty()) throw std::invalid_argument("domain X must be nonempty");
  std::vector<std::pair<int64_t, int64_t>> pts;
  pts.reserve(sys.domain.size());
  for (const auto& p : sys.domain) pts.emplace_back(p.x, p.y);
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    throw std::invalid_argument("domain X must be duplicate-free");
  }
  if (sys.modulus) {
    uint64_t q = sys.modulus->value();
    for (int64_t s : sys.signs) {
      if (reduce_i64(s, q) == 0) throw std::invalid_argument("sign must be nonzero mod q");
    }
  } else {
    for (int64_t s : sys.signs) {
      if (s != 1 && s != -1) {
        throw std::invalid_argument("integer-mode signs must be +1 or -1");
      }
    }
  }
}

detail::SystemTable table_from_system(const CongruenceSystem& sys) {
  std::optional<uint64_t> q;
  if (sys.modulus) q = sys.modulus->value();
  return detail::build_table(q, sys.domain.size(), sys.functions.size(),
                             [&sys](std::size_t p, std::size_t j) {
                               return sys.functions[j](sys.domain[p]);
                             });
}

// Signs laid out + for the first half, - for the second, matching the
// left/right display of the specialized systems.
std::vector<int64_t> half_signs(int64_t half) {
  std::vector<int64_t> s(static_cast<std::size_t>(2 * half), 1);
  for (std::size_t i = static_cast<std::size_t>(half); i < s.size(); ++i) s[i] = -1;
  return s;
}

std::vector<std::vector<DomainPoint>> tuples_to_points(
    const std::vector<std::vector<uint32_t>>& idx_tuples,
    const std::vector<DomainPoint>& domain) {
  std::vector<std::vector<DomainPoint>> out;
  out.reserve(idx_tuples.size());
  for (const auto& t : idx_tuples) {
    std::vector<DomainPoint> row;
    row.reserve(t.size());
    for (uint32_t i : t) row.push_back(domain[i]);
    out.push_back(std::move(row));
  }
  return out;
}

// Runs a collected naive count: witnesses dropped (with a note) when the
// final count exceeds the collection cap.
CountReport collected_count(const detail::SystemTable& table,
                            std::span<const int64_t> signs,
                            std::span<const int64_t> targets,
                            const std::vector<DomainPoint>& domain,
                            const CountOptions& options) {
  CountReport report;
  auto t0 = Clock::now();
  std::vector<std::vector<uint32_t>> tuples;
  bool over_cap = false;
  detail::Collector collector = [&](std::span<const uint32_t> tuple) {
    if (tuples.size() < options.collect_cap) {
      tuples.emplace_back(tuple.begin(), tuple.end());
    } else {
      over_cap = true;
    }
  };
  report.count = detail::count_naive(table, signs, targets, options, &collector);
  report.method = CountMethod::kNaive;
  if (over_cap) {
    report.notes.push_back("witness list dropped: count exceeds collect cap");
  } else {
    report.solutions = tuples_to_points(tuples, domain);
  }
  report.elapsed_seconds = seconds_since(t0);
  return report;
}

int64_t checked_ipow(int64_t base, int64_t exp) {
  u128 v = checked_pow(static_cast<u128>(base), static_cast<uint64_t>(exp));
  if (v > static_cast<u128>(INT64_MAX)) throw OverflowError("integer power exceeds int64");
  return static_cast<int64_t>(v);
}

}  // namespace

const char* to_string(CountMethod m) {
  return m == CountMethod::kNaive ? "naive" : "meet-in-the-middle";
}

CountReport count_generic(const CongruenceSystem& sys, bool collect,
                          const CountOptions& options) {
  validate_system(sys);
  auto table = table_from_system(sys);
  if (collect) {
    return collected_count(table, sys.signs, sys.targets, sys.domain, options);
  }
  CountReport report;
  auto t0 = Clock::now();
  report.count = detail::count_naive(table, sys.signs, sys.targets, options);
  report.method = CountMethod::kNaive;
  report.elapsed_seconds = seconds_since(t0);
  return report;
}

CountReport count_generic_mitm(const CongruenceSystem& sys, const CountOptions& options) {
  validate_system(sys);
  auto table = table_from_system(sys);
  CountReport report;
  auto t0 = Clock::now();
  report.count = detail::count_mitm(table, sys.signs, sys.targets, options);
  report.method = CountMethod::kMeetInTheMiddle;
  report.elapsed_seconds = seconds_since(t0);
  return report;
}

namespace {

CountReport count_jrk_impl(int64_t r, int64_t k, int64_t V, std::optional<uint64_t> q,
                           const CountOptions& options) {
  if (r < 1 || k < 1 || V < 1) throw std::invalid_argument("need r, k, V >= 1");
  if (!q) {
    // Exact power sums: r*V^k (and every shifted target) must stay checked.
    if (!pow_within(static_cast<u128>(V), static_cast<uint64_t>(k),
                    static_cast<u128>((int64_t{1} << 61) / (2 * r)))) {
      throw OverflowError("r*V^k exceeds the checked integer range");
    }
  }
  auto table = detail::build_table(
      q, static_cast<std::size_t>(V), static_cast<std::size_t>(k),
      [&](std::size_t p, std::size_t j) -> int64_t {
        int64_t v = static_cast<int64_t>(p) + 1;
        if (q) {
          return static_cast<int64_t>(
              powmod_u64(static_cast<uint64_t>(v), static_cast<uint64_t>(j) + 1, *q));
        }
        return checked_ipow(v, static_cast<int64_t>(j) + 1);
      });
  auto signs = half_signs(r);
  std::vector<int64_t> targets(static_cast<std::size_t>(k), 0);
  CountReport report;
  auto t0 = Clock::now();
  report.count = detail::count_auto(table, signs, targets, options, &report.method);
  report.elapsed_seconds = seconds_since(t0);
  return report;
}

}  // namespace

CountReport count_jrk_integer(int64_t r, int64_t k, int64_t V, const CountOptions& options) {
  return count_jrk_impl(r, k, V, std::nullopt, options);
}

CountReport count_jrk_mod(int64_t r, int64_t k, int64_t V, PrimeModulus q,
                          const CountOptions& options) {
  return count_jrk_impl(r, k, V, q.value(), options);
}

namespace {

// Domain (n, u) with offset < n <= offset+window, 1 <= u <= u_max,
// n-major then u, so enumeration order is deterministic.
std::vector<DomainPoint> pair_domain(int64_t offset, int64_t window, int64_t u_max) {
  std::vector<DomainPoint> domain;
  if (window < 0 || u_max < 0) throw std::invalid_argument("window and u_max must be >= 0");
  domain.reserve(static_cast<std::size_t>(window * u_max));
  for (int64_t n = offset + 1; n <= offset + window; ++n) {
    for (int64_t u = 1; u <= u_max; ++u) domain.push_back({n, u});
  }
  return domain;
}

// n^j * u^{k-j} mod q. Exponents below zero (possible only when the 2l <= k
// hypothesis is violated) use the Fermat inverse and require u nonzero mod q.
int64_t mixed_monomial(int64_t n, int64_t u, int64_t j, int64_t k, uint64_t q) {
  uint64_t nn = reduce_i64(n, q);
  uint64_t uu = reduce_i64(u, q);
  uint64_t np = powmod_u64(nn, static_cast<uint64_t>(j), q);
  uint64_t up;
  if (k - j >= 0) {
    up = powmod_u64(uu, static_cast<uint64_t>(k - j), q);
  } else {
    if (uu == 0) throw std::invalid_argument("u divisible by q with a negative exponent");
    uint64_t inv = powmod_u64(uu, q - 2, q);
    up = powmod_u64(inv, static_cast<uint64_t>(j - k), q);
  }
  return static_cast<int64_t>(mulmod_u64(np, up, q));
}

std::vector<std::string> ikl_hypothesis_notes(int64_t k, int64_t ell, int64_t window,
                                              int64_t u_max, uint64_t q) {
  std::vector<std::string> notes;
  if (2 * ell > k) notes.push_back("hypothesis violated: 2l > k");
  if (static_cast<u128>(window) * static_cast<u128>(u_max) > static_cast<u128>(q)) {
    notes.push_back("hypothesis violated: N*U > q");
  }
  if (u_max > window) notes.push_back("hypothesis violated: U > N");
  return notes;
}

}  // namespace

CountReport count_ikl(int64_t k, int64_t ell, int64_t offset, int64_t window, int64_t u_max,
                      PrimeModulus q, bool collect, const CountOptions& options) {
  if (k < 1 || ell < 1) throw std::invalid_argument("need k >= 1 and l >= 1");
  auto notes = ikl_hypothesis_notes(k, ell, window, u_max, q.value());
  auto domain = pair_domain(offset, window, u_max);
  CountReport report;
  if (domain.empty()) {
    report.notes = std::move(notes);
    report.notes.push_back("empty domain");
    if (collect) report.solutions = std::vector<std::vector<DomainPoint>>{};
    return report;
  }
  std::size_t m = static_cast<std::size_t>(2 * ell);
  auto table = detail::build_table(q.value(), domain.size(), m,
                                   [&](std::size_t p, std::size_t j) {
                                     return mixed_monomial(domain[p].x, domain[p].y,
                                                           static_cast<int64_t>(j), k,
                                                           q.value());
                                   });
  auto signs = half_signs(ell);
  std::vector<int64_t> targets(m, 0);
  if (collect) {
    report = collected_count(table, signs, targets, domain, options);
  } else {
    auto t0 = Clock::now();
    report.count = detail::count_auto(table, signs, targets, options, &report.method);
    report.elapsed_seconds = seconds_since(t0);
  }
  report.notes.insert(report.notes.begin(), notes.begin(), notes.end());
  return report;
}

CountReport count_mult_congruence(int64_t offset, int64_t window, int64_t u_max,
                                  PrimeModulus qm, const CountOptions& options) {
  uint64_t q = qm.value();
  if (window < 0 || u_max < 0) throw std::invalid_argument("window and u_max must be >= 0");
  CountReport report;
  report.method = CountMethod::kMeetInTheMiddle;
  if (static_cast<u128>(window) * static_cast<u128>(u_max) > static_cast<u128>(q)) {
    report.notes.push_back("hypothesis violated: N*U > q");
  }
  if (u_max > window) report.notes.push_back("hypothesis violated: U > N");
  auto t0 = Clock::now();
  u128 pairs = static_cast<u128>(window) * static_cast<u128>(u_max);
  if (pairs > options.enumeration_cap) throw CapExceeded("product histogram exceeds cap");
  // Histogram of n*u mod q; the count is the number of key collisions.
  std::unordered_map<uint64_t, uint64_t> hist;
  for (int64_t n = offset + 1; n <= offset + window; ++n) {
    uint64_t nr = reduce_i64(n, q);
    for (int64_t u = 1; u <= u_max; ++u) {
      ++hist[mulmod_u64(nr, reduce_i64(u, q), q)];
    }
  }
  u128 total = 0;
  for (const auto& [key, c] : hist) {
    (void)key;
    total = checked_add(total, checked_mul(c, c));
  }
  report.count = total;
  report.elapsed_seconds = seconds_since(t0);
  return report;
}

VandermondeReport vandermonde_pair_property(int64_t k, int64_t ell, int64_t offset,
                                            int64_t window, int64_t u_max, PrimeModulus q,
                                            const CountOptions& options) {
  auto counted = count_ikl(k, ell, offset, window, u_max, q, /*collect=*/true, options);
  if (!counted.solutions.has_value()) {
    throw CapExceeded("solution set exceeds the witness collection cap");
  }
  VandermondeReport report;
  report.solutions_checked = counted.count;
  uint64_t qq = q.value();
  for (const auto& sol : *counted.solutions) {
    bool found = false;
    for (std::size_t r = 0; r < sol.size() && !found; ++r) {
      for (std::size_t s = r + 1; s < sol.size() && !found; ++s) {
        uint64_t lhs = mulmod_u64(reduce_i64(sol[r].x, qq), reduce_i64(sol[s].y, qq), qq);
        uint64_t rhs = mulmod_u64(reduce_i64(sol[s].x, qq), reduce_i64(sol[r].y, qq), qq);
        found = lhs == rhs;
      }
    }
    if (!found) report.violations.push_back(sol);
  }
  report.holds = report.violations.empty();
  return report;
}

namespace {

u128 binomial_u128(int64_t n, int64_t r) {
  if (r < 0 || r > n) return 0;
  u128 acc = 1;
  for (int64_t i = 1; i <= r; ++i) {
    acc = checked_mul(acc, static_cast<u128>(n - r + i));
    acc /= static_cast<u128>(i);
  }
  return acc;
}

}  // namespace

ParsevalReport parseval_target_sum(int64_t k, int64_t ell, int64_t offset, int64_t window,
                                   int64_t u_max, PrimeModulus qm,
                                   const CountOptions& options) {
  if (k < 1 || ell < 1) throw std::invalid_argument("need k >= 1 and l >= 1");
  if (k > 62) throw std::invalid_argument("target enumeration limited to k <= 62");
  uint64_t q = qm.value();
  auto domain = pair_domain(offset, window, u_max);
  if (domain.empty()) throw std::invalid_argument("empty domain");

  // q^k total target vectors; each costs a points^l enumeration.
  if (!pow_within(q, static_cast<uint64_t>(k),
                  options.enumeration_cap / std::max<uint64_t>(domain.size(), 1))) {
    throw CapExceeded("target space exceeds cap");
  }

  std::vector<uint64_t> binom_mod(static_cast<std::size_t>(k));
  for (int64_t j = 0; j < k; ++j) {
    binom_mod[static_cast<std::size_t>(j)] =
        static_cast<uint64_t>(binomial_u128(k, j) % static_cast<u128>(q));
  }
  auto table = detail::build_table(
      q, domain.size(), static_cast<std::size_t>(k), [&](std::size_t p, std::size_t j) {
        int64_t mono = mixed_monomial(domain[p].x, domain[p].y, static_cast<int64_t>(j), k, q);
        return static_cast<int64_t>(
            mulmod_u64(binom_mod[j], static_cast<uint64_t>(mono), q));
      });
  std::vector<int64_t> signs(static_cast<std::size_t>(ell), 1);  // one-sided

  ParsevalReport report;
  report.expected = checked_pow(static_cast<u128>(domain.size()), static_cast<uint64_t>(ell));
  std::vector<int64_t> lambda(static_cast<std::size_t>(k), 0);
  u128 total = 0;
  uint64_t enumerated = 0;
  while (true) {
    total = checked_add(total, detail::count_naive(table, signs, lambda, options));
    ++enumerated;
    // odometer over (Z/q)^k, lexicographic
    std::size_t pos = lambda.size();
    while (pos > 0) {
      --pos;
      if (static_cast<uint64_t>(++lambda[pos]) < q) break;
      lambda[pos] = 0;
      if (pos == 0) {
        report.total = total;
        report.targets_enumerated = enumerated;
        report.holds = total == report.expected;
        return report;
      }
    }
  }
}

ShiftDecompositionReport shift_decomposition_check(int64_t r, int64_t k, int64_t V,
                                                   PrimeModulus qm, int64_t m,
                                                   const CountOptions& options) {
  if (r < 1 || V < 1) throw std::invalid_argument("need r >= 1 and V >= 1");
  if (m < 1 || m >= k) throw std::invalid_argument("need 1 <= m < k");
  uint64_t q = qm.value();

  ShiftDecompositionReport report;
  // Validity window: (r*V)^m < q forces the j <= m congruences to be exact
  // equalities, which is what the decomposition needs.
  if (!pow_within(static_cast<u128>(r) * static_cast<u128>(V), static_cast<uint64_t>(m),
                  static_cast<u128>(q - 1))) {
    report.applicable = false;
    report.note = "inapplicable: (r*V)^m >= q";
    return report;
  }
  report.applicable = true;

  report.congruence_count = count_jrk_mod(r, k, V, qm, options).count;

  // Exact power-sum vectors of one half; both halves share the multiset.
  if (!pow_within(static_cast<u128>(V), static_cast<uint64_t>(k),
                  static_cast<u128>((int64_t{1} << 61) / (2 * r)))) {
    throw OverflowError("r*V^k exceeds the checked integer range");
  }
  auto table = detail::build_table(std::nullopt, static_cast<std::size_t>(V),
                                   static_cast<std::size_t>(k),
                                   [&](std::size_t p, std::size_t j) {
                                     return checked_ipow(static_cast<int64_t>(p) + 1,
                                                         static_cast<int64_t>(j) + 1);
                                   });
  auto half = detail::sum_multiset(table, static_cast<std::size_t>(r), options);

  // Admissible shift range per equation: |lambda_j| <= floor(r*V^j / q).
  std::vector<int64_t> limit(static_cast<std::size_t>(k + 1), 0);
  for (int64_t j = m + 1; j <= k; ++j) {
    u128 bound = checked_mul(static_cast<u128>(r),
                             checked_pow(static_cast<u128>(V), static_cast<uint64_t>(j)));
    limit[static_cast<std::size_t>(j)] = static_cast<int64_t>(bound / q);
  }

  // Bucket right-half vectors on (exact j <= m, reduced j > m) so every
  // bucket pair agrees mod q everywhere and exactly on the first m rows.
  std::unordered_map<std::vector<int64_t>, std::vector<const std::pair<const std::vector<int64_t>, uint64_t>*>,
                     detail::VecHash>
      buckets;
  auto reduced_key = [&](const std::vector<int64_t>& sums) {
    std::vector<int64_t> key(sums.size());
    for (std::size_t j = 0; j < sums.size(); ++j) {
      key[j] = (static_cast<int64_t>(j) < m)
                   ? sums[j]
                   : static_cast<int64_t>(reduce_i64(sums[j], q));
    }
    return key;
  };
  for (const auto& entry : half) buckets[reduced_key(entry.first)].push_back(&entry);

  std::map<std::vector<int64_t>, u128> term_counts;
  u128 total = 0;
  for (const auto& lhs_entry : half) {
    auto it = buckets.find(reduced_key(lhs_entry.first));
    if (it == buckets.end()) continue;
    for (const auto* rhs_entry : it->second) {
      std::vector<int64_t> shifts(static_cast<std::size_t>(k - m));
      bool admissible = true;
      for (int64_t j = m + 1; j <= k && admissible; ++j) {
        int64_t diff = lhs_entry.first[static_cast<std::size_t>(j - 1)] -
                       rhs_entry->first[static_cast<std::size_t>(j - 1)];
        int64_t lam = diff / static_cast<int64_t>(q);  // exact by bucket congruence
        if (std::abs(lam) > limit[static_cast<std::size_t>(j)]) admissible = false;
        shifts[static_cast<std::size_t>(j - m - 1)] = lam;
      }
      if (!admissible) continue;
      u128 c = checked_mul(static_cast<u128>(lhs_entry.second),
                           static_cast<u128>(rhs_entry->second));
      total = checked_add(total, c);
      term_counts[shifts] = checked_add(term_counts[shifts], c);
    }
  }

  report.decomposition_total = total;
  for (auto& [shifts, count] : term_counts) {
    report.terms.push_back({shifts, count});
  }
  report.holds = report.congruence_count == report.decomposition_total;
  if (!report.holds) {
    report.note = "decomposition total differs from the congruence count";
  }
  return report;
}

}  // namespace gausslab
