#ifndef GAUSSLAB_EXPSUM_HPP_
#define GAUSSLAB_EXPSUM_HPP_

#include <cstdint>

#include "gausslab/complex_value.hpp"
#include "gausslab/modarith.hpp"

namespace gausslab {

// One incomplete power-sum instance: sum of e_q(a*n^k) over the half-open
// integer window offset < n <= offset + length.
struct SumSpec {
  int64_t a;       // coefficient, a != 0 mod q
  int64_t k;       // degree, >= 1
  PrimeModulus q;
  int64_t offset;  // M, any integer (reduced mod q internally)
  int64_t length;  // N, >= 0

  SumSpec(int64_t a, int64_t k, PrimeModulus q, int64_t offset, int64_t length);
};

// Compensated summation in fixed ascending-n order; err bounds the
// worst-case rounding of the whole accumulation, so |value| <= length + err.
ComplexValue incomplete_power_sum(const SumSpec& spec);

// Full-period sum (offset 0, length q); window-independent by periodicity.
ComplexValue complete_power_sum(int64_t a, int64_t k, PrimeModulus q);

struct ScanResult {
  double max_abs = 0.0;
  int64_t witness = 0;  // smallest maximizing coefficient (or window offset)
  ComplexValue sum;     // the winning sum
};

// Max of |sum| over a in [1, q-1]; deterministic tie-break on the smallest a.
// Scans fan out over workers and merge with an exact total order, so the
// result is identical for any thread count.
ScanResult max_abs_over_coeffs(int64_t k, PrimeModulus q, int64_t offset, int64_t length,
                               int threads = 0);

// Max of |sum| over window offsets M in [0, q); smallest maximizing M wins ties.
ScanResult max_abs_over_shifts(int64_t a, int64_t k, PrimeModulus q, int64_t length,
                               int threads = 0);

}  // namespace gausslab

#endif  // GAUSSLAB_EXPSUM_HPP_
