#include "count_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "gausslab/modarith.hpp"
#include "gausslab/parallel.hpp"

namespace gausslab::detail {

namespace {

constexpr int64_t kIntSumLimit = int64_t{1} << 62;  // partial sums stay below this
constexpr uint64_t kModulusLimit = uint64_t{1} << 62;
constexpr uint64_t kParallelThreshold = uint64_t{1} << 21;

// points^vars <= limit?
bool space_within(uint64_t points, std::size_t vars, uint64_t limit) {
  return pow_within(points, vars, limit);
}

// Per-variable-slot signed contribution tables, layout [slot][p*m + j].
// Modular entries are canonical; integer mode verifies that every partial
// sum of |entries| stays inside the checked range.
std::vector<std::vector<int64_t>> slot_tables(const SystemTable& table,
                                              std::span<const int64_t> signs) {
  std::size_t vars = signs.size();
  std::vector<std::vector<int64_t>> slots(vars);
  if (table.modular()) {
    uint64_t q = *table.q;
    for (std::size_t i = 0; i < vars; ++i) {
      uint64_t s = reduce_i64(signs[i], q);
      if (s == 0) throw std::invalid_argument("sign is zero mod q");
      slots[i].resize(table.points * table.m);
      for (std::size_t p = 0; p < table.points; ++p) {
        for (std::size_t j = 0; j < table.m; ++j) {
          slots[i][p * table.m + j] = static_cast<int64_t>(
              mulmod_u64(s, static_cast<uint64_t>(table.at(p, j)), q));
        }
      }
    }
    return slots;
  }
  int64_t max_abs = 0;
  for (int64_t v : table.values) max_abs = std::max(max_abs, std::abs(v));
  if (vars > 0 && max_abs > kIntSumLimit / static_cast<int64_t>(vars)) {
    throw OverflowError("integer partial sums exceed the checked range");
  }
  for (std::size_t i = 0; i < vars; ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw std::invalid_argument("integer-mode signs must be +1 or -1");
    }
    slots[i].resize(table.points * table.m);
    for (std::size_t p = 0; p < table.points; ++p) {
      for (std::size_t j = 0; j < table.m; ++j) {
        slots[i][p * table.m + j] = signs[i] * table.at(p, j);
      }
    }
  }
  return slots;
}

std::vector<int64_t> canonical_targets(const SystemTable& table,
                                       std::span<const int64_t> targets) {
  std::vector<int64_t> t(targets.begin(), targets.end());
  if (table.modular()) {
    for (auto& v : t) v = static_cast<int64_t>(reduce_i64(v, *table.q));
  }
  return t;
}

// Depth-first enumeration over the variable slots [var_begin, var_end),
// slot var_begin restricted to point range [first_begin, first_end).
// Leaf(row, tuple) sees the final partial-sum row and the point indices.
template <typename Leaf>
class SumEnumerator {
 public:
  SumEnumerator(const SystemTable& table, const std::vector<std::vector<int64_t>>& slots,
                std::size_t var_begin, std::size_t var_end, Leaf leaf)
      : table_(table),
        slots_(slots),
        var_begin_(var_begin),
        var_end_(var_end),
        leaf_(leaf),
        modular_(table.modular()),
        q_(modular_ ? static_cast<int64_t>(*table.q) : 0),
        sums_((var_end - var_begin + 1) * table.m, 0),
        tuple_(var_end - var_begin, 0) {}

  void run(std::size_t first_begin, std::size_t first_end) {
    first_begin_ = first_begin;
    first_end_ = first_end;
    if (var_begin_ == var_end_) {
      leaf_(sums_.data(), std::span<const uint32_t>(tuple_));
      return;
    }
    descend(0);
  }

 private:
  void descend(std::size_t level) {
    std::size_t begin = (level == 0) ? first_begin_ : 0;
    std::size_t end = (level == 0) ? first_end_ : table_.points;
    const auto& slot = slots_[var_begin_ + level];
    const int64_t* cur = sums_.data() + level * table_.m;
    int64_t* next = sums_.data() + (level + 1) * table_.m;
    bool last = (level + 1 == var_end_ - var_begin_);
    for (std::size_t p = begin; p < end; ++p) {
      const int64_t* contrib = slot.data() + p * table_.m;
      if (modular_) {
        for (std::size_t j = 0; j < table_.m; ++j) {
          int64_t s = cur[j] + contrib[j];
          next[j] = s >= q_ ? s - q_ : s;
        }
      } else {
        for (std::size_t j = 0; j < table_.m; ++j) next[j] = cur[j] + contrib[j];
      }
      tuple_[level] = static_cast<uint32_t>(p);
      if (last) {
        leaf_(next, std::span<const uint32_t>(tuple_));
      } else {
        descend(level + 1);
      }
    }
  }

  const SystemTable& table_;
  const std::vector<std::vector<int64_t>>& slots_;
  std::size_t var_begin_, var_end_;
  Leaf leaf_;
  bool modular_;
  int64_t q_;
  std::vector<int64_t> sums_;
  std::vector<uint32_t> tuple_;
  std::size_t first_begin_ = 0, first_end_ = 0;
};

void check_modulus_range(const SystemTable& table) {
  if (table.modular() && *table.q >= kModulusLimit) {
    throw std::invalid_argument("counting requires modulus < 2^62");
  }
}

bool row_matches(const int64_t* row, const std::vector<int64_t>& targets) {
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (row[j] != targets[j]) return false;
  }
  return true;
}

}  // namespace

SystemTable build_table(std::optional<uint64_t> q, std::size_t points, std::size_t m,
                        const std::function<int64_t(std::size_t, std::size_t)>& eval) {
  SystemTable table;
  table.q = q;
  table.m = m;
  table.points = points;
  table.values.resize(points * m);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 0; j < m; ++j) {
      int64_t v = eval(p, j);
      if (q) v = static_cast<int64_t>(reduce_i64(v, *q));
      table.values[p * m + j] = v;
    }
  }
  return table;
}

u128 count_naive(const SystemTable& table, std::span<const int64_t> signs,
                 std::span<const int64_t> targets, const CountOptions& options,
                 const Collector* collector) {
  check_modulus_range(table);
  if (targets.size() != table.m) throw std::invalid_argument("target count != equations");
  if (!space_within(table.points, signs.size(), options.enumeration_cap)) {
    throw CapExceeded("enumeration space exceeds cap");
  }
  auto slots = slot_tables(table, signs);
  auto tvec = canonical_targets(table, targets);
  std::size_t vars = signs.size();

  auto run_range = [&](std::size_t begin, std::size_t end) -> u128 {
    u128 local = 0;
    auto leaf = [&](const int64_t* row, std::span<const uint32_t> tuple) {
      if (row_matches(row, tvec)) {
        ++local;
        if (collector) (*collector)(tuple);
      }
    };
    SumEnumerator<decltype(leaf)> en(table, slots, 0, vars, leaf);
    en.run(begin, end);
    return local;
  };

  int threads = resolve_threads(options.threads);
  bool parallel = collector == nullptr && threads > 1 && vars > 0 && table.points > 1 &&
                  !space_within(table.points, vars, kParallelThreshold);
  if (!parallel) {
    return run_range(0, vars == 0 ? 1 : table.points);
  }
  std::vector<u128> partial(static_cast<std::size_t>(threads), 0);
  parallel_blocks(table.points, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
    partial[b] = run_range(begin, end);
  });
  u128 total = 0;
  for (u128 c : partial) total = checked_add(total, c);
  return total;
}

u128 count_mitm(const SystemTable& table, std::span<const int64_t> signs,
                std::span<const int64_t> targets, const CountOptions& options) {
  check_modulus_range(table);
  if (targets.size() != table.m) throw std::invalid_argument("target count != equations");
  std::size_t vars = signs.size();
  if (vars < 2) return count_naive(table, signs, targets, options);

  std::size_t left_vars = vars / 2;
  std::size_t right_vars = vars - left_vars;
  if (!space_within(table.points, left_vars, options.enumeration_cap) ||
      !space_within(table.points, right_vars, options.enumeration_cap)) {
    throw CapExceeded("half-enumeration space exceeds cap");
  }
  // One key vector plus hash-map overhead per distinct left key. Distinct
  // keys are bounded by the tuple space and, in the modular mode, by q^m.
  uint64_t entry_bytes = table.m * 8 + 64;
  uint64_t max_entries = options.memory_cap_bytes / entry_bytes;
  bool fits = space_within(table.points, left_vars, max_entries) ||
              (table.modular() && space_within(*table.q, table.m, max_entries));
  if (!fits) {
    throw CapExceeded("collision table exceeds memory cap");
  }

  auto slots = slot_tables(table, signs);
  auto tvec = canonical_targets(table, targets);

  // Left half: multiset of partial-sum vectors (single writer).
  SumMultiset left;
  {
    std::vector<int64_t> key(table.m);
    auto leaf = [&](const int64_t* row, std::span<const uint32_t>) {
      key.assign(row, row + table.m);
      ++left[key];
    };
    SumEnumerator<decltype(leaf)> en(table, slots, 0, left_vars, leaf);
    en.run(0, left_vars == 0 ? 1 : table.points);
  }

  // Right half: probe with the complementary key target - right_sum.
  bool modular = table.modular();
  int64_t q = modular ? static_cast<int64_t>(*table.q) : 0;
  auto probe_range = [&](std::size_t begin, std::size_t end) -> u128 {
    u128 subtotal = 0;
    std::vector<int64_t> key(table.m);
    auto leaf = [&](const int64_t* row, std::span<const uint32_t>) {
      for (std::size_t j = 0; j < table.m; ++j) {
        if (modular) {
          int64_t d = tvec[j] - row[j];
          key[j] = d < 0 ? d + q : d;
        } else {
          key[j] = tvec[j] - row[j];
        }
      }
      auto it = left.find(key);
      if (it != left.end()) subtotal = checked_add(subtotal, it->second);
    };
    SumEnumerator<decltype(leaf)> en(table, slots, left_vars, vars, leaf);
    en.run(begin, end);
    return subtotal;
  };

  int threads = resolve_threads(options.threads);
  if (threads <= 1 || space_within(table.points, right_vars, kParallelThreshold) ||
      table.points < 2) {
    return probe_range(0, table.points);
  }
  std::vector<u128> partial(static_cast<std::size_t>(threads), 0);
  parallel_blocks(table.points, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
    partial[b] = probe_range(begin, end);
  });
  u128 total = 0;
  for (u128 c : partial) total = checked_add(total, c);
  return total;
}

u128 count_auto(const SystemTable& table, std::span<const int64_t> signs,
                std::span<const int64_t> targets, const CountOptions& options,
                CountMethod* method_out) {
  if (space_within(table.points, signs.size(), kParallelThreshold)) {
    if (method_out) *method_out = CountMethod::kNaive;
    return count_naive(table, signs, targets, options);
  }
  try {
    u128 c = count_mitm(table, signs, targets, options);
    if (method_out) *method_out = CountMethod::kMeetInTheMiddle;
    return c;
  } catch (const CapExceeded&) {
    if (method_out) *method_out = CountMethod::kNaive;
    return count_naive(table, signs, targets, options);
  }
}

SumMultiset sum_multiset(const SystemTable& table, std::size_t var_count,
                         const CountOptions& options) {
  check_modulus_range(table);
  if (!space_within(table.points, var_count, options.enumeration_cap)) {
    throw CapExceeded("half-enumeration space exceeds cap");
  }
  std::vector<int64_t> ones(var_count, 1);
  auto slots = slot_tables(table, ones);
  SumMultiset out;
  std::vector<int64_t> key(table.m);
  auto leaf = [&](const int64_t* row, std::span<const uint32_t>) {
    key.assign(row, row + table.m);
    ++out[key];
  };
  SumEnumerator<decltype(leaf)> en(table, slots, 0, var_count, leaf);
  en.run(0, var_count == 0 ? 1 : table.points);
  return out;
}

}  // namespace gausslab::detail
