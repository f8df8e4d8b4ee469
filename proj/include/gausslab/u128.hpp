#ifndef GAUSSLAB_U128_HPP_
#define GAUSSLAB_U128_HPP_

#include <cstdint>
#include <limits>
#include <string>

#include "gausslab/errors.hpp"

namespace gausslab {

using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  char buf[40];
  int pos = 40;
  while (v > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
    v /= 10;
  }
  return std::string(buf + pos, buf + 40);
}

inline u128 checked_add(u128 a, u128 b) {
  if (a > kU128Max - b) throw OverflowError("128-bit addition overflow");
  return a + b;
}

inline u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > kU128Max / a) throw OverflowError("128-bit multiplication overflow");
  return a * b;
}

// base^exp <= limit, evaluated without overflow (early exit).
inline bool pow_within(u128 base, uint64_t exp, u128 limit) {
  u128 acc = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return false;
    acc *= base;
    if (acc > limit) return false;
  }
  return acc <= limit;
}

inline u128 checked_pow(u128 base, uint64_t exp) {
  u128 acc = 1;
  for (uint64_t i = 0; i < exp; ++i) acc = checked_mul(acc, base);
  return acc;
}

}  // namespace gausslab

#endif  // GAUSSLAB_U128_HPP_
