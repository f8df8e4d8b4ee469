// Internal enumeration engine behind the public counters: evaluation tables,
// naive DFS counting, and the half-enumeration collision backend. Supports
// any number of variables (one sign per variable slot); the public
// CongruenceSystem contract restricts itself to 2*l variables.
#ifndef GAUSSLAB_COUNT_ENGINE_HPP_
#define GAUSSLAB_COUNT_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gausslab/counters.hpp"
#include "gausslab/u128.hpp"

namespace gausslab::detail {

// Precomputed f_j(x) for every domain point and equation; canonical residues
// in the modular mode, exact int64 otherwise.
struct SystemTable {
  std::optional<uint64_t> q;  // empty: over the integers
  std::size_t m = 0;          // equations
  std::size_t points = 0;     // |X|
  std::vector<int64_t> values;  // points * m, row-major by point

  bool modular() const { return q.has_value(); }
  int64_t at(std::size_t p, std::size_t j) const { return values[p * m + j]; }
};

SystemTable build_table(std::optional<uint64_t> q, std::size_t points, std::size_t m,
                        const std::function<int64_t(std::size_t, std::size_t)>& eval);

// Receives each matching tuple as point indices, in enumeration order.
using Collector = std::function<void(std::span<const uint32_t>)>;

// Full enumeration over points^signs.size() tuples. Enforces the enumeration
// cap up front. Collection forces the sequential path.
u128 count_naive(const SystemTable& table, std::span<const int64_t> signs,
                 std::span<const int64_t> targets, const CountOptions& options,
                 const Collector* collector = nullptr);

// Half-enumeration collision count; identical value to count_naive. Throws
// CapExceeded when the key table would not fit the memory cap.
u128 count_mitm(const SystemTable& table, std::span<const int64_t> signs,
                std::span<const int64_t> targets, const CountOptions& options);

// Backend choice by cost, with fallback from an over-budget collision table
// to naive enumeration. Records the method used.
u128 count_auto(const SystemTable& table, std::span<const int64_t> signs,
                std::span<const int64_t> targets, const CountOptions& options,
                CountMethod* method_out);

struct VecHash {
  std::size_t operator()(const std::vector<int64_t>& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ (v.size() + 1);
    for (int64_t x : v) {
      uint64_t z = static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + h;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
  }
};

using SumMultiset = std::unordered_map<std::vector<int64_t>, uint64_t, VecHash>;

// Multiset of unsigned sum vectors (sum over var_count variables of the
// per-point value vector), keyed by the exact m-vector.
SumMultiset sum_multiset(const SystemTable& table, std::size_t var_count,
                         const CountOptions& options);

}  // namespace gausslab::detail

#endif  // GAUSSLAB_COUNT_ENGINE_HPP_
