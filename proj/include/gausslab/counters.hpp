#ifndef GAUSSLAB_COUNTERS_HPP_
#define GAUSSLAB_COUNTERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gausslab/modarith.hpp"
#include "gausslab/u128.hpp"

namespace gausslab {

// A domain element: scalar domains use x, pair domains use (x, y) = (n, u).
struct DomainPoint {
  int64_t x = 0;
  int64_t y = 0;
  friend bool operator==(const DomainPoint&, const DomainPoint&) = default;
};

// A generic multi-equation system in 2*pair_count variables drawn from an
// explicit finite domain: count tuples with
//   sign_1 f_j(x_1) + ... + sign_{2l} f_j(x_{2l}) == target_j   for every j,
// as congruences mod a prime, or as exact equations when modulus is empty.
struct CongruenceSystem {
  std::optional<PrimeModulus> modulus;  // empty: over the integers
  std::vector<std::function<int64_t(const DomainPoint&)>> functions;  // m maps
  std::vector<DomainPoint> domain;      // X: nonempty, duplicate-free
  int64_t pair_count = 1;               // l: the system has 2*l variables
  std::vector<int64_t> signs;           // 2*l entries; nonzero mod q, or +-1 over Z
  std::vector<int64_t> targets;         // m entries
};

enum class CountMethod { kNaive, kMeetInTheMiddle };
const char* to_string(CountMethod m);

struct CountReport {
  u128 count = 0;                 // exact ordered-tuple count, overflow-checked
  CountMethod method = CountMethod::kNaive;
  // Witness tuples in enumeration order; populated only on request and when
  // count fits the collection cap.
  std::optional<std::vector<std::vector<DomainPoint>>> solutions;
  double elapsed_seconds = 0.0;
  std::vector<std::string> notes;  // flagged hypothesis violations etc.
};

struct CountOptions {
  uint64_t enumeration_cap = 4'000'000'000ull;  // naive tuple-visit budget
  uint64_t memory_cap_bytes = 2ull << 30;       // collision-table budget
  uint64_t collect_cap = 1'000'000;             // max witnesses to keep
  int threads = 0;                              // 0: resolve_threads default
};

// Exact count by full enumeration of domain^(2l). Throws CapExceeded when
// |X|^{2l} exceeds the enumeration cap.
CountReport count_generic(const CongruenceSystem& system, bool collect = false,
                          const CountOptions& options = {});

// Identical count via half-enumeration into a collision table keyed on the
// partial-sum vector. Throws CapExceeded when the table would not fit the
// memory cap; callers then fall back to count_generic.
CountReport count_generic_mitm(const CongruenceSystem& system,
                               const CountOptions& options = {});

// Solutions of  v_1^j+...+v_r^j = v_{r+1}^j+...+v_{2r}^j  (j = 1..k)
// with 1 <= v_i <= V, over the integers. Errors if r*V^k does not fit the
// checked integer range.
CountReport count_jrk_integer(int64_t r, int64_t k, int64_t V,
                              const CountOptions& options = {});

// Same system as congruences mod q.
CountReport count_jrk_mod(int64_t r, int64_t k, int64_t V, PrimeModulus q,
                          const CountOptions& options = {});

struct ShiftTerm {
  std::vector<int64_t> shifts;  // (lambda_{m+1}, ..., lambda_k)
  u128 count = 0;
};

// Verifies that the mod-q count decomposes as the sum, over admissible shift
// vectors (|lambda_j| <= r V^j / q), of exact-equation counts where the
// j <= m equations hold over Z and the j > m ones are shifted by lambda_j*q.
// Requires (r*V)^m < q; outside that window the check is inapplicable.
struct ShiftDecompositionReport {
  bool applicable = false;
  bool holds = false;
  u128 congruence_count = 0;     // J_{r,k}(V;q)
  u128 decomposition_total = 0;  // sum over admissible shift vectors
  std::vector<ShiftTerm> terms;  // nonzero contributions, lexicographic
  std::string note;
};
ShiftDecompositionReport shift_decomposition_check(int64_t r, int64_t k, int64_t V,
                                                   PrimeModulus q, int64_t m,
                                                   const CountOptions& options = {});

// Solutions of the 2l-equation mixed-monomial system
//   sum_{i<=l} n_i^j u_i^{k-j} == sum_{i>l} n_i^j u_i^{k-j}  (mod q),
//   j = 0..2l-1,  offset < n_i <= offset+window,  1 <= u_i <= u_max.
// Hypothesis violations (2l > k, window*u_max > q, u_max > window) are
// flagged in the report notes, not errors.
CountReport count_ikl(int64_t k, int64_t ell, int64_t offset, int64_t window,
                      int64_t u_max, PrimeModulus q, bool collect = false,
                      const CountOptions& options = {});

// Solutions of n_1 u_1 == n_2 u_2 (mod q) over the same variable ranges.
CountReport count_mult_congruence(int64_t offset, int64_t window, int64_t u_max,
                                  PrimeModulus q, const CountOptions& options = {});

// Checks that every solution of the mixed-monomial system has two indices
// r != s with n_r u_s == n_s u_r (mod q), i.e. coinciding ratios n/u.
struct VandermondeReport {
  bool holds = false;
  u128 solutions_checked = 0;
  std::vector<std::vector<DomainPoint>> violations;
};
VandermondeReport vandermonde_pair_property(int64_t k, int64_t ell, int64_t offset,
                                            int64_t window, int64_t u_max, PrimeModulus q,
                                            const CountOptions& options = {});

// Target-enumeration identity: summing the one-sided count of
//   binom(k,j)(n_1^j u_1^{k-j} + ... + n_l^j u_l^{k-j}) == lambda_j (mod q),
//   j = 0..k-1,
// over every lambda in (Z/q)^k must give exactly (window*u_max)^l, since
// each variable tuple matches exactly one target vector.
struct ParsevalReport {
  bool holds = false;
  u128 total = 0;
  u128 expected = 0;
  uint64_t targets_enumerated = 0;
};
ParsevalReport parseval_target_sum(int64_t k, int64_t ell, int64_t offset, int64_t window,
                                   int64_t u_max, PrimeModulus q,
                                   const CountOptions& options = {});

}  // namespace gausslab

#endif  // GAUSSLAB_COUNTERS_HPP_
