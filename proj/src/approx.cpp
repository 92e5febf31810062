#include "fsig/approx.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace fsig {

namespace {

// Minimal RAII interval [lo, hi] over mpfr with outward rounding.
class Iv {
 public:
  explicit Iv(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Iv(const Iv& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Iv& operator=(const Iv& o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
  }
  ~Iv() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  static Iv from_rational(const Rational& q, mpfr_prec_t prec) {
    Iv r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  void add(const Iv& o) {
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  }

  void mul_rational(const Rational& q) {
    if (q >= 0) {
      mpfr_mul_q(lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_t t;
      mpfr_init2(t, prec());
      mpfr_mul_q(t, hi_, q.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(hi_, lo_, q.get_mpq_t(), MPFR_RNDU);
      mpfr_set(lo_, t, MPFR_RNDD);
      mpfr_clear(t);
    }
  }

  // Replace by the square of the interval (result >= 0).
  void square() {
    mpfr_t a, b;
    mpfr_init2(a, prec());
    mpfr_init2(b, prec());
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(b, hi_, MPFR_RNDU);
    bool straddles = mpfr_sgn(lo_) < 0 && mpfr_sgn(hi_) > 0;
    // hi = max(|lo|,|hi|)^2 rounded up
    if (mpfr_cmp(a, b) < 0) mpfr_swap(a, b);
    mpfr_mul(hi_, a, a, MPFR_RNDU);
    if (straddles) {
      mpfr_set_zero(lo_, 1);
    } else {
      // b = min(|lo|,|hi|); rounded-up abs still fine for a lower bound
      // after squaring down only if we recompute with RNDD:
      mpfr_abs(b, b, MPFR_RNDD);
      mpfr_mul(lo_, b, b, MPFR_RNDD);
    }
    mpfr_clear(a);
    mpfr_clear(b);
  }

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }

 private:
  mpfr_t lo_, hi_;
};

// Enclosure of cos or sin of 2*pi*k/n, 0 <= k < n.
Iv trig_enclosure(unsigned long k, unsigned long n, bool want_cos, mpfr_prec_t prec) {
  mpfr_t angle_lo, angle_hi, mid, val, err, width;
  mpfr_inits2(prec, angle_lo, angle_hi, mid, val, err, width, (mpfr_ptr)nullptr);

  // angle = 2*pi*k/n, enclosed by directed rounding (k/n >= 0).
  mpfr_const_pi(angle_lo, MPFR_RNDD);
  mpfr_mul_ui(angle_lo, angle_lo, 2 * k, MPFR_RNDD);
  mpfr_div_ui(angle_lo, angle_lo, n, MPFR_RNDD);
  mpfr_const_pi(angle_hi, MPFR_RNDU);
  mpfr_mul_ui(angle_hi, angle_hi, 2 * k, MPFR_RNDU);
  mpfr_div_ui(angle_hi, angle_hi, n, MPFR_RNDU);

  // Evaluate at the midpoint; |cos'|,|sin'| <= 1 bounds the angle slack.
  mpfr_add(mid, angle_lo, angle_hi, MPFR_RNDN);
  mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
  if (want_cos)
    mpfr_cos(val, mid, MPFR_RNDN);
  else
    mpfr_sin(val, mid, MPFR_RNDN);

  mpfr_sub(width, angle_hi, angle_lo, MPFR_RNDU);
  // err = 2*width + 2^(4-prec) covers the angle interval, the midpoint
  // rounding (angles < 2*pi) and the one-ulp trig rounding (|val| <= 1).
  mpfr_mul_ui(width, width, 2, MPFR_RNDU);
  mpfr_set_ui_2exp(err, 1, 4 - (mpfr_exp_t)prec, MPFR_RNDU);
  mpfr_add(err, err, width, MPFR_RNDU);

  Iv out(prec);
  mpfr_sub(out.lo(), val, err, MPFR_RNDD);
  mpfr_add(out.hi(), val, err, MPFR_RNDU);
  mpfr_clears(angle_lo, angle_hi, mid, val, err, width, (mpfr_ptr)nullptr);
  return out;
}

struct ComplexIv {
  Iv re, im;
  explicit ComplexIv(mpfr_prec_t prec) : re(prec), im(prec) {}
};

ComplexIv evaluate(const CycloNumber& a, mpfr_prec_t prec) {
  ComplexIv acc(prec);
  for (size_t j = 0; j < a.c.size(); ++j) {
    if (a.c[j] == 0) continue;
    Iv cj = trig_enclosure(j, a.order, true, prec);
    Iv sj = trig_enclosure(j, a.order, false, prec);
    cj.mul_rational(a.c[j]);
    sj.mul_rational(a.c[j]);
    acc.re.add(cj);
    acc.im.add(sj);
  }
  return acc;
}

// Exact dyadic rational equal to the mpfr value.
Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    mpz_class two_e;
    mpz_ui_pow_ui(two_e.get_mpz_t(), 2, (unsigned long)e);
    r *= Rational(two_e);
  } else {
    mpz_class two_e;
    mpz_ui_pow_ui(two_e.get_mpz_t(), 2, (unsigned long)(-e));
    r /= Rational(two_e);
  }
  return r;
}

}  // namespace

ComplexBox approx_complex(const CycloNumber& a, unsigned prec_bits) {
  mpfr_prec_t prec = std::max<mpfr_prec_t>(prec_bits, 16);
  ComplexIv v = evaluate(a, prec);

  mpfr_t mid_re, mid_im, r1, r2;
  mpfr_inits2(prec, mid_re, mid_im, r1, r2, (mpfr_ptr)nullptr);
  mpfr_add(mid_re, v.re.lo(), v.re.hi(), MPFR_RNDN);
  mpfr_div_ui(mid_re, mid_re, 2, MPFR_RNDN);
  mpfr_add(mid_im, v.im.lo(), v.im.hi(), MPFR_RNDN);
  mpfr_div_ui(mid_im, mid_im, 2, MPFR_RNDN);

  // radius = half-width(re) + half-width(im) + slack for the double roundings
  mpfr_sub(r1, v.re.hi(), v.re.lo(), MPFR_RNDU);
  mpfr_sub(r2, v.im.hi(), v.im.lo(), MPFR_RNDU);
  mpfr_add(r1, r1, r2, MPFR_RNDU);

  ComplexBox box;
  box.re = mpfr_get_d(mid_re, MPFR_RNDN);
  box.im = mpfr_get_d(mid_im, MPFR_RNDN);
  double halfwidths = mpfr_get_d(r1, MPFR_RNDU);
  // Account for converting the midpoints to double.
  double conv = (std::abs(box.re) + std::abs(box.im) + 1.0) * 1e-15;
  box.radius = halfwidths + conv;
  mpfr_clears(mid_re, mid_im, r1, r2, (mpfr_ptr)nullptr);
  return box;
}

Rational two_over_abs_upper(const CycloNumber& z, unsigned prec_bits) {
  if (z.is_zero()) fail("division by zero");
  // |z|^2 = z * conj(z); exact when rational.
  CycloNumber norm = z * conj(z);
  std::optional<Rational> r = as_rational(norm);
  if (r) {
    if (*r <= 0) fail("internal: |z|^2 must be positive");
    Integer num = r->get_num(), den = r->get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      Integer sn, sd;
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      return make_rational(2 * sd, sn);  // exactly 2/sqrt(r)
    }
    // Rational but not a square: dyadic lower bound of sqrt(r).
    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(prec_bits, 16);; prec *= 2) {
      mpfr_t s;
      mpfr_init2(s, prec);
      mpfr_set_q(s, r->get_mpq_t(), MPFR_RNDD);
      mpfr_sqrt(s, s, MPFR_RNDD);
      Rational lo = mpfr_to_rational(s);
      mpfr_clear(s);
      if (lo > 0) return Rational(2) / lo;
      if (prec > 1 << 20) fail("internal: cannot bound |z| away from zero");
    }
  }
  // Fully interval route: lower-bound |z| via re^2 + im^2.
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(prec_bits, 16);; prec *= 2) {
    ComplexIv v = evaluate(z, prec);
    Iv re2 = v.re, im2 = v.im;
    re2.square();
    im2.square();
    re2.add(im2);
    mpfr_t s;
    mpfr_init2(s, prec);
    if (mpfr_sgn(re2.lo()) > 0) {
      mpfr_sqrt(s, re2.lo(), MPFR_RNDD);
      Rational lo = mpfr_to_rational(s);
      mpfr_clear(s);
      if (lo > 0) return Rational(2) / lo;
    } else {
      mpfr_clear(s);
    }
    if (prec > 1 << 20) fail("internal: cannot bound |z| away from zero");
  }
}

}  // namespace fsig
