#ifndef GAUSSLAB_MODARITH_HPP_
#define GAUSSLAB_MODARITH_HPP_

#include <cstdint>

#include "gausslab/complex_value.hpp"

namespace gausslab {

// Deterministic primality for the full 64-bit range: trial division by
// small primes, then Miller-Rabin on a fixed witness set that is exact
// for every n < 3.3e24. No probabilistic false positives.
bool is_prime(uint64_t n);

// Smallest prime strictly greater than n.
uint64_t next_prime(uint64_t n);

// (a*b) mod m via a double-width intermediate; no overflow for any 64-bit inputs.
inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// a^e mod m by square-and-multiply; e == 0 yields 1 mod m.
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

// Canonical representative of x mod m in [0, m); correct for negative x.
inline uint64_t reduce_i64(int64_t x, uint64_t m) {
  int64_t r = x % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

// A prime modulus; primality is verified once at construction.
class PrimeModulus {
 public:
  explicit PrimeModulus(uint64_t q);
  uint64_t value() const { return q_; }
  friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.q_ == b.q_; }
  friend bool operator!=(PrimeModulus a, PrimeModulus b) { return a.q_ != b.q_; }

 private:
  uint64_t q_;
};

// Canonical residue in [0, q), reduced eagerly at construction.
class Residue {
 public:
  Residue(int64_t value, PrimeModulus modulus)
      : value_(reduce_i64(value, modulus.value())), modulus_(modulus) {}

  uint64_t value() const { return value_; }
  PrimeModulus modulus() const { return modulus_; }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  uint64_t value_;
  PrimeModulus modulus_;
};

// All binary operations require equal moduli and throw std::invalid_argument
// on a mismatch.
Residue mul_mod(const Residue& x, const Residue& y);
Residue add_mod(const Residue& x, const Residue& y);
Residue sub_mod(const Residue& x, const Residue& y);
Residue pow_mod(const Residue& base, uint64_t exponent);

// e^{2*pi*i*z/q}. z is reduced mod q before the argument is formed, so the
// result is exactly periodic in z. Primality of q is not required here.
ComplexValue unit_phase(int64_t z, uint64_t q);
inline ComplexValue unit_phase(int64_t z, PrimeModulus q) { return unit_phase(z, q.value()); }

}  // namespace gausslab

#endif  // GAUSSLAB_MODARITH_HPP_
