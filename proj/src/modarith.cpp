#include "gausslab/modarith.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gausslab {

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod_u64(result, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return result;
}

namespace {

bool miller_rabin_composite(uint64_t n, uint64_t a, uint64_t d, int s) {
  uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  int s = 0;
  uint64_t d = n - 1;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Exact witness set for n < 3.317e24 (covers all 64-bit inputs).
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (miller_rabin_composite(n, a, d, s)) return false;
  }
  return true;
}

uint64_t next_prime(uint64_t n) {
  uint64_t c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

PrimeModulus::PrimeModulus(uint64_t q) : q_(q) {
  if (!is_prime(q)) {
    throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
  }
}

namespace {

void require_same_modulus(const Residue& x, const Residue& y) {
  if (x.modulus() != y.modulus()) {
    throw std::invalid_argument("residue modulus mismatch: " +
                                std::to_string(x.modulus().value()) + " vs " +
                                std::to_string(y.modulus().value()));
  }
}

}  // namespace

Residue mul_mod(const Residue& x, const Residue& y) {
  require_same_modulus(x, y);
  uint64_t q = x.modulus().value();
  return Residue(static_cast<int64_t>(mulmod_u64(x.value(), y.value(), q)), x.modulus());
}

Residue add_mod(const Residue& x, const Residue& y) {
  require_same_modulus(x, y);
  uint64_t q = x.modulus().value();
  uint64_t s = x.value() + y.value();  // both < q <= 2^63, no wrap
  if (s >= q) s -= q;
  return Residue(static_cast<int64_t>(s), x.modulus());
}

Residue sub_mod(const Residue& x, const Residue& y) {
  require_same_modulus(x, y);
  uint64_t q = x.modulus().value();
  uint64_t s = x.value() + q - y.value();
  if (s >= q) s -= q;
  return Residue(static_cast<int64_t>(s), x.modulus());
}

Residue pow_mod(const Residue& base, uint64_t exponent) {
  uint64_t q = base.modulus().value();
  return Residue(static_cast<int64_t>(powmod_u64(base.value(), exponent, q)), base.modulus());
}

ComplexValue unit_phase(int64_t z, uint64_t q) {
  uint64_t zr = reduce_i64(z, q);
  long double t = 2.0L * 3.14159265358979323846264338327950288L *
                  static_cast<long double>(zr) / static_cast<long double>(q);
  ComplexValue v;
  v.re = static_cast<double>(cosl(t));
  v.im = static_cast<double>(sinl(t));
  v.err = 4.0 * DBL_EPSILON;  // argument + sin/cos rounding, extended-precision path
  return v;
}

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
  ComplexValue r;
  r.re = a.re + b.re;
  r.im = a.im + b.im;
  double mag = std::fabs(r.re) + std::fabs(r.im);
  r.err = a.err + b.err + DBL_EPSILON * mag;
  return r;
}

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
  long double are = a.re, aim = a.im, bre = b.re, bim = b.im;
  ComplexValue r;
  r.re = static_cast<double>(are * bre - aim * bim);
  r.im = static_cast<double>(are * bim + aim * bre);
  double ma = std::fabs(a.re) + std::fabs(a.im);
  double mb = std::fabs(b.re) + std::fabs(b.im);
  r.err = a.err * mb + b.err * ma + a.err * b.err + 2.0 * DBL_EPSILON * (std::fabs(r.re) + std::fabs(r.im));
  return r;
}

void KahanComplex::add(const ComplexValue& term) {
  double y = term.re - cre_;
  double t = re_ + y;
  cre_ = (t - re_) - y;
  re_ = t;

  y = term.im - cim_;
  t = im_ + y;
  cim_ = (t - im_) - y;
  im_ = t;

  // Compensated summation loses at most ~2 eps per term relative to the
  // term magnitudes; |re|+|im| overestimates |term| by at most sqrt(2).
  double mag = std::fabs(term.re) + std::fabs(term.im);
  err_ += term.err + 2.0 * DBL_EPSILON * (mag + term.err);
}

ComplexValue KahanComplex::result() const {
  ComplexValue v;
  v.re = re_;
  v.im = im_;
  v.err = err_;
  return v;
}

}  // namespace gausslab
