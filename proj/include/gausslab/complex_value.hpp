#ifndef GAUSSLAB_COMPLEX_VALUE_HPP_
#define GAUSSLAB_COMPLEX_VALUE_HPP_

#include <cmath>
#include <complex>

namespace gausslab {

// A complex value together with an accumulated worst-case rounding bound.
// err never shrinks under accumulation.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;

  double abs() const { return std::hypot(re, im); }
  std::complex<double> value() const { return {re, im}; }
};

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
// Component products are formed in extended precision before rounding back.
ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);

// Compensated (Kahan) complex accumulator with a running error bound:
// err covers the per-term evaluation errors plus the summation rounding.
class KahanComplex {
 public:
  void add(const ComplexValue& term);
  ComplexValue result() const;

 private:
  double re_ = 0.0, im_ = 0.0;
  double cre_ = 0.0, cim_ = 0.0;  // compensation carries
  double err_ = 0.0;
};

}  // namespace gausslab

#endif  // GAUSSLAB_COMPLEX_VALUE_HPP_
