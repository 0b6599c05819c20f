#pragma once

// Interval arithmetic over MPFR with outward (directed) rounding. Every
// operation returns an interval guaranteed to contain the exact result for all
// points of its inputs.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>

#include "fairbits/dyadic.hpp"

namespace fairbits::mp {

class Float {
 public:
  explicit Float(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Float(const Float& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Float(Float&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Float& operator=(const Float& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Float& operator=(Float&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Float() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend int cmp(const Float& a, const Float& b) { return mpfr_cmp(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

struct Interval {
  Float lo;
  Float hi;

  explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  Interval(Float l, Float h) : lo(std::move(l)), hi(std::move(h)) {}

  mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
};

// Exact conversion of a finite MPFR value to a dyadic rational.
inline Dyadic to_dyadic(const Float& x) {
  if (x.is_inf() || x.is_nan()) throw InvalidInput("non-finite value has no dyadic form");
  if (mpfr_zero_p(x.get())) return Dyadic(0);
  mpz_class z;
  const mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x.get());
  if (e >= 0) {
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Dyadic(std::move(z), 0);
  }
  return Dyadic(std::move(z), static_cast<std::uint64_t>(-e));
}

// Point interval holding d exactly; precision grows to fit the numerator.
inline Interval point(const Dyadic& d, mpfr_prec_t prec) {
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(d.numerator().get_mpz_t(), 2));
  const mpfr_prec_t p = std::max(prec, bits);
  Float v(p);
  mpfr_set_z(v.get(), d.numerator().get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(v.get(), v.get(), d.scale(), MPFR_RNDN);
  return {v, v};
}

inline Interval from_mpq(const mpq_class& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

inline Interval from_si(long v, mpfr_prec_t prec) {
  Interval r(std::max<mpfr_prec_t>(prec, 64));
  mpfr_set_si(r.lo.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi.get(), v, MPFR_RNDU);
  return r;
}

inline Interval pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval euler_gamma(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_euler(r.lo.get(), MPFR_RNDD);
  mpfr_const_euler(r.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval log2_const(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval add(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval sub(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return r;
}

inline Interval neg(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

inline Interval mul(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Interval r(p);
  Float t(p);
  const Float* xs[2] = {&a.lo, &a.hi};
  const Float* ys[2] = {&b.lo, &b.hi};
  bool first = true;
  for (const Float* x : xs) {
    for (const Float* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

// Divisor must not contain zero.
inline Interval div(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw InvalidInput("interval division by an interval containing zero");
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Interval r(p);
  Float t(p);
  const Float* xs[2] = {&a.lo, &a.hi};
  const Float* ys[2] = {&b.lo, &b.hi};
  bool first = true;
  for (const Float* x : xs) {
    for (const Float* y : ys) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

inline Interval mul_2si(const Interval& a, long e) {
  Interval r(a.prec());
  mpfr_mul_2si(r.lo.get(), a.lo.get(), e, MPFR_RNDD);
  mpfr_mul_2si(r.hi.get(), a.hi.get(), e, MPFR_RNDU);
  return r;
}

namespace detail {

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

inline Interval increasing(UnaryFn f, const Interval& a) {
  Interval r(a.prec());
  f(r.lo.get(), a.lo.get(), MPFR_RNDD);
  f(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval decreasing(UnaryFn f, const Interval& a) {
  Interval r(a.prec());
  f(r.lo.get(), a.hi.get(), MPFR_RNDD);
  f(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

// f(mid) widened by radius * Lipschitz constant 1, clamped to [-1, 1].
inline Interval lipschitz_unit(UnaryFn f, const Interval& a) {
  const mpfr_prec_t p = a.prec();
  Float mid(p + 2);
  mpfr_add(mid.get(), a.lo.get(), a.hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  Float rad(p), t(p);
  mpfr_sub(rad.get(), a.hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(t.get(), mid.get(), a.lo.get(), MPFR_RNDU);
  if (mpfr_less_p(rad.get(), t.get())) mpfr_set(rad.get(), t.get(), MPFR_RNDU);
  Interval r(p);
  f(r.lo.get(), mid.get(), MPFR_RNDD);
  f(r.hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(r.lo.get(), r.lo.get(), rad.get(), MPFR_RNDD);
  mpfr_add(r.hi.get(), r.hi.get(), rad.get(), MPFR_RNDU);
  if (mpfr_cmp_si(r.lo.get(), -1) < 0) mpfr_set_si(r.lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi.get(), 1) > 0) mpfr_set_si(r.hi.get(), 1, MPFR_RNDU);
  return r;
}

}  // namespace detail

inline Interval exp(const Interval& a) { return detail::increasing(mpfr_exp, a); }
inline Interval expm1(const Interval& a) { return detail::increasing(mpfr_expm1, a); }
inline Interval log(const Interval& a) { return detail::increasing(mpfr_log, a); }
inline Interval log2(const Interval& a) { return detail::increasing(mpfr_log2, a); }
inline Interval log1p(const Interval& a) { return detail::increasing(mpfr_log1p, a); }
inline Interval erfc(const Interval& a) { return detail::decreasing(mpfr_erfc, a); }
inline Interval sin(const Interval& a) { return detail::lipschitz_unit(mpfr_sin, a); }
inline Interval cos(const Interval& a) { return detail::lipschitz_unit(mpfr_cos, a); }

// Square root; a lower endpoint below zero (from rounding) is clamped to 0.
inline Interval sqrt(const Interval& a) {
  Interval r(a.prec());
  if (a.lo.sign() < 0) {
    mpfr_set_zero(r.lo.get(), 1);
  } else {
    mpfr_sqrt(r.lo.get(), a.lo.get(), MPFR_RNDD);
  }
  if (a.hi.sign() < 0) throw InvalidInput("square root of a negative interval");
  mpfr_sqrt(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

// Hull of a and b.
inline Interval hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_min(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_max(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

// Upper bound of hi - lo.
inline Float width(const Interval& a) {
  Float w(a.prec());
  mpfr_sub(w.get(), a.hi.get(), a.lo.get(), MPFR_RNDU);
  return w;
}

// True when hi - lo <= 2^-k is certain.
inline bool narrower_than(const Interval& a, long k) {
  if (a.lo.is_inf() || a.hi.is_inf()) return false;
  const Float w = width(a);
  return mpfr_cmp_si_2exp(w.get(), 1, -k) <= 0;
}

inline std::string to_string(const Interval& a, int digits = 12) {
  char buf[160];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDg, %.*RUg]", digits, a.lo.get(), digits, a.hi.get());
  return buf;
}

}  // namespace fairbits::mp
