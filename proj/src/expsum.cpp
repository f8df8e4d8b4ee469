#include "gausslab/expsum.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "gausslab/parallel.hpp"

namespace gausslab {

namespace {

constexpr uint64_t kPhaseTableLimit = 1ull << 21;

// Phases e_q(t) for all t in [0, q); entries are exactly unit_phase(t, q),
// so table and direct evaluation give bit-identical sums.
std::vector<ComplexValue> build_phase_table(uint64_t q) {
  std::vector<ComplexValue> table(q);
  for (uint64_t t = 0; t < q; ++t) table[t] = unit_phase(static_cast<int64_t>(t), q);
  return table;
}

}  // namespace

SumSpec::SumSpec(int64_t a_, int64_t k_, PrimeModulus q_, int64_t offset_, int64_t length_)
    : a(a_), k(k_), q(q_), offset(offset_), length(length_) {
  if (k < 1) throw std::invalid_argument("degree k must be >= 1");
  if (length < 0) throw std::invalid_argument("window length N must be >= 0");
  if (reduce_i64(a, q.value()) == 0) {
    throw std::invalid_argument("coefficient a must be nonzero mod q");
  }
}

ComplexValue incomplete_power_sum(const SumSpec& spec) {
  uint64_t q = spec.q.value();
  uint64_t a = reduce_i64(spec.a, q);
  uint64_t e = static_cast<uint64_t>(spec.k);

  std::vector<ComplexValue> table;
  if (q <= kPhaseTableLimit && static_cast<uint64_t>(spec.length) >= q / 2) {
    table = build_phase_table(q);
  }

  KahanComplex acc;
  uint64_t n = reduce_i64(spec.offset, q);
  for (int64_t i = 0; i < spec.length; ++i) {
    n = (n + 1 == q) ? 0 : n + 1;
    uint64_t z = mulmod_u64(a, powmod_u64(n, e, q), q);
    acc.add(table.empty() ? unit_phase(static_cast<int64_t>(z), q) : table[z]);
  }
  return acc.result();
}

ComplexValue complete_power_sum(int64_t a, int64_t k, PrimeModulus q) {
  return incomplete_power_sum(SumSpec(a, k, q, 0, static_cast<int64_t>(q.value())));
}

namespace {

// better-than order: larger |sum| first, then smaller witness. Total order
// over scan candidates, so merging block results in any order is exact.
bool improves(double abs, int64_t witness, const ScanResult& best) {
  return abs > best.max_abs || (abs == best.max_abs && witness < best.witness);
}

}  // namespace

ScanResult max_abs_over_coeffs(int64_t k, PrimeModulus qm, int64_t offset, int64_t length,
                               int threads) {
  uint64_t q = qm.value();
  if (k < 1) throw std::invalid_argument("degree k must be >= 1");
  if (length < 0) throw std::invalid_argument("window length N must be >= 0");
  if (q == 2) {
    // only a = 1 to scan
    ComplexValue s = incomplete_power_sum(SumSpec(1, k, qm, offset, length));
    return {s.abs(), 1, s};
  }

  // n^k mod q over the window does not depend on a; hoist it when it fits.
  std::vector<uint64_t> powers;
  if (static_cast<uint64_t>(length) <= (1ull << 24)) {
    powers.resize(static_cast<std::size_t>(length));
    uint64_t n = reduce_i64(offset, q);
    for (int64_t i = 0; i < length; ++i) {
      n = (n + 1 == q) ? 0 : n + 1;
      powers[static_cast<std::size_t>(i)] = powmod_u64(n, static_cast<uint64_t>(k), q);
    }
  }
  std::vector<ComplexValue> table;
  if (q <= kPhaseTableLimit) table = build_phase_table(q);

  int nt = resolve_threads(threads);
  std::vector<ScanResult> block_best(static_cast<std::size_t>(nt > 0 ? nt : 1));
  std::size_t num_coeffs = static_cast<std::size_t>(q - 1);
  parallel_blocks(num_coeffs, nt, [&](std::size_t b, std::size_t begin, std::size_t end) {
    ScanResult best;
    best.max_abs = -1.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      uint64_t a = idx + 1;
      KahanComplex acc;
      if (!powers.empty() || length == 0) {
        for (uint64_t p : powers) {
          uint64_t z = mulmod_u64(a, p, q);
          acc.add(table.empty() ? unit_phase(static_cast<int64_t>(z), q) : table[z]);
        }
      } else {
        uint64_t n = reduce_i64(offset, q);
        for (int64_t i = 0; i < length; ++i) {
          n = (n + 1 == q) ? 0 : n + 1;
          uint64_t z = mulmod_u64(a, powmod_u64(n, static_cast<uint64_t>(k), q), q);
          acc.add(table.empty() ? unit_phase(static_cast<int64_t>(z), q) : table[z]);
        }
      }
      ComplexValue s = acc.result();
      double abs = s.abs();
      if (improves(abs, static_cast<int64_t>(a), best)) {
        best = {abs, static_cast<int64_t>(a), s};
      }
    }
    block_best[b] = best;
  });

  ScanResult best;
  best.max_abs = -1.0;
  for (const auto& cand : block_best) {
    if (cand.max_abs >= 0.0 && improves(cand.max_abs, cand.witness, best)) best = cand;
  }
  if (best.max_abs < 0.0) best = {0.0, 1, ComplexValue{}};  // length == 0
  return best;
}

ScanResult max_abs_over_shifts(int64_t a, int64_t k, PrimeModulus qm, int64_t length,
                               int threads) {
  uint64_t q = qm.value();
  if (k < 1) throw std::invalid_argument("degree k must be >= 1");
  if (length < 0) throw std::invalid_argument("window length N must be >= 0");
  uint64_t ar = reduce_i64(a, q);
  if (ar == 0) throw std::invalid_argument("coefficient a must be nonzero mod q");

  // Per-residue phase of a*n^k, indexable by window position.
  std::vector<ComplexValue> term;
  if (q <= kPhaseTableLimit) {
    term.resize(q);
    for (uint64_t n = 0; n < q; ++n) {
      uint64_t z = mulmod_u64(ar, powmod_u64(n, static_cast<uint64_t>(k), q), q);
      term[n] = unit_phase(static_cast<int64_t>(z), q);
    }
  }

  int nt = resolve_threads(threads);
  std::vector<ScanResult> block_best(static_cast<std::size_t>(nt > 0 ? nt : 1));
  parallel_blocks(q, nt, [&](std::size_t b, std::size_t begin, std::size_t end) {
    ScanResult best;
    best.max_abs = -1.0;
    for (std::size_t m = begin; m < end; ++m) {
      KahanComplex acc;
      uint64_t n = static_cast<uint64_t>(m);
      for (int64_t i = 0; i < length; ++i) {
        n = (n + 1 == q) ? 0 : n + 1;
        if (!term.empty()) {
          acc.add(term[n]);
        } else {
          uint64_t z = mulmod_u64(ar, powmod_u64(n, static_cast<uint64_t>(k), q), q);
          acc.add(unit_phase(static_cast<int64_t>(z), q));
        }
      }
      ComplexValue s = acc.result();
      double abs = s.abs();
      if (improves(abs, static_cast<int64_t>(m), best)) {
        best = {abs, static_cast<int64_t>(m), s};
      }
    }
    block_best[b] = best;
  });

  ScanResult best;
  best.max_abs = -1.0;
  for (const auto& cand : block_best) {
    if (cand.max_abs >= 0.0 && improves(cand.max_abs, cand.witness, best)) best = cand;
  }
  if (best.max_abs < 0.0) best = {0.0, 0, ComplexValue{}};
  return best;
}

}  // namespace gausslab
