#pragma once

// Rigorous complex enclosures of cyclotomic numbers. Everything here is a
// certificate: enclosures are computed with directed rounding and always
// contain the true value.

#include "fsig/cyclotomic.hpp"

namespace fsig {

struct ComplexBox {
  double re = 0.0;      // midpoint
  double im = 0.0;      // midpoint
  double radius = 0.0;  // the true value lies within this distance
};

// Evaluate at zeta_n -> exp(2*pi*i/n) with the given working precision (bits).
ComplexBox approx_complex(const CycloNumber& a, unsigned prec_bits = 128);

// Exact rational upper bound for 2/|z| (z != 0). Uses the exact value when
// |z|^2 is a rational perfect square, otherwise a dyadic lower bound of |z|
// obtained from directed rounding.
Rational two_over_abs_upper(const CycloNumber& z, unsigned prec_bits = 128);

}  // namespace fsig
