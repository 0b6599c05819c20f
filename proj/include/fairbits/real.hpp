#pragma once

// Computable reals: exact rationals, or values produced by an interval
// evaluator at a requested working precision. Enclosures are dyadic, nested in
// request order, and cached per handle.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "fairbits/detail/mpfr.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/errors.hpp"

namespace fairbits {

// [lo, hi]; an infinite flag overrides the corresponding endpoint.
struct RealEnclosure {
  Dyadic lo;
  Dyadic hi;
  bool lower_infinite = false;
  bool upper_infinite = false;

  bool finite() const { return !lower_infinite && !upper_infinite; }
  Dyadic width() const { return hi - lo; }
  Dyadic midpoint() const { return (lo + hi).half(); }
  bool contains(const Dyadic& x) const {
    return (lower_infinite || lo <= x) && (upper_infinite || x <= hi);
  }
};

inline RealEnclosure point_enclosure(const Dyadic& d) { return {d, d}; }

// Outward rounding of an MPFR interval to the grid 2^-grid.
inline RealEnclosure to_enclosure(const mp::Interval& iv, std::uint64_t grid) {
  RealEnclosure e;
  if (iv.lo.is_inf()) {
    e.lower_infinite = iv.lo.sign() < 0;
    if (!e.lower_infinite) throw InvalidInput("lower endpoint is +infinity");
  } else {
    e.lo = Dyadic(mp::to_dyadic(iv.lo).floor_scaled(grid), grid);
  }
  if (iv.hi.is_inf()) {
    e.upper_infinite = iv.hi.sign() > 0;
    if (!e.upper_infinite) throw InvalidInput("upper endpoint is -infinity");
  } else {
    e.hi = Dyadic(mp::to_dyadic(iv.hi).ceil_scaled(grid), grid);
  }
  return e;
}

class Real {
 public:
  using Evaluator = std::function<mp::Interval(mpfr_prec_t)>;

  Real() : Real(exact(mpq_class(0))) {}

  static Real exact(const mpq_class& q) {
    auto impl = std::make_shared<Impl>();
    impl->name = q.get_str();
    impl->exact = q;
    impl->exact->canonicalize();
    return Real(std::move(impl));
  }
  static Real exact(const Dyadic& d) { return exact(d.to_mpq()); }

  // eval(prec) must return an enclosure whose width shrinks to 0 as prec grows.
  static Real computed(std::string name, Evaluator eval) {
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->eval = std::move(eval);
    return Real(std::move(impl));
  }

  static Real sum(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return exact(*a.exact_value() + *b.exact_value());
    return computed("(" + a.name() + "+" + b.name() + ")",
                    [a, b](mpfr_prec_t p) { return mp::add(a.interval(p), b.interval(p)); });
  }

  static Real difference(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return exact(*a.exact_value() - *b.exact_value());
    return computed("(" + a.name() + "-" + b.name() + ")",
                    [a, b](mpfr_prec_t p) { return mp::sub(a.interval(p), b.interval(p)); });
  }

  bool is_exact() const { return impl_->exact.has_value(); }
  const std::optional<mpq_class>& exact_value() const { return impl_->exact; }
  const std::string& name() const { return impl_->name; }

  // MPFR enclosure at working precision prec.
  mp::Interval interval(mpfr_prec_t prec) const {
    if (impl_->exact) {
      const mpq_class& q = *impl_->exact;
      if (mpz_popcount(q.get_den().get_mpz_t()) == 1) return mp::point(Dyadic::from_mpq(q), prec);
      return mp::from_mpq(q, prec);
    }
    return impl_->eval(prec);
  }

  // Dyadic enclosure of width <= 2^-k.
  RealEnclosure enclose(std::uint64_t k) const {
    if (impl_->exact) {
      const mpq_class& q = *impl_->exact;
      if (mpz_popcount(q.get_den().get_mpz_t()) == 1) return point_enclosure(Dyadic::from_mpq(q));
      mpz_class scaled_num = q.get_num();
      mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), k);
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
      return {Dyadic(f, k), Dyadic(f + 1, k)};
    }
    return enclose_computed(k);
  }

  double to_double() const {
    if (impl_->exact) return impl_->exact->get_d();
    return enclose(60).midpoint().to_double();
  }

  // Largest working precision tried before EnclosureBudgetExceeded.
  static constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

 private:
  struct Impl {
    std::string name;
    std::optional<mpq_class> exact;
    Evaluator eval;
    std::mutex mu;
    std::optional<RealEnclosure> best;
    mpfr_prec_t last_prec = 0;
  };

  explicit Real(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  RealEnclosure enclose_computed(std::uint64_t k) const {
    std::lock_guard lock(impl_->mu);
    const Dyadic target = Dyadic::pow2(-static_cast<long>(k));
    if (impl_->best && impl_->best->width() <= target) return *impl_->best;
    mpfr_prec_t prec = std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(k) + 64, impl_->last_prec);
    const std::uint64_t grid = k + 2;
    const Dyadic raw_target = Dyadic::pow2(-static_cast<long>(k) - 1);
    while (prec <= kMaxPrecision) {
      const mp::Interval iv = impl_->eval(prec);
      if (!iv.lo.is_inf() && !iv.hi.is_inf() && !iv.lo.is_nan() && !iv.hi.is_nan()) {
        const Dyadic lo = mp::to_dyadic(iv.lo);
        const Dyadic hi = mp::to_dyadic(iv.hi);
        if (hi - lo <= raw_target) {
          RealEnclosure e{Dyadic(lo.floor_scaled(grid), grid), Dyadic(hi.ceil_scaled(grid), grid)};
          if (impl_->best) {
            e.lo = max(e.lo, impl_->best->lo);
            e.hi = min(e.hi, impl_->best->hi);
          }
          impl_->best = e;
          impl_->last_prec = prec;
          return e;
        }
      }
      prec *= 2;
    }
    throw EnclosureBudgetExceeded("cannot enclose " + impl_->name + " to 2^-" + std::to_string(k));
  }

  std::shared_ptr<Impl> impl_;
};

// Built-in handles.
namespace reals {

inline Real from_interval_fn(std::string name, Real::Evaluator eval) {
  return Real::computed(std::move(name), std::move(eval));
}

// e^-x for exact x.
inline Real exp_neg(const mpq_class& x) {
  return Real::computed("exp(-" + x.get_str() + ")", [x](mpfr_prec_t p) {
    return mp::exp(mp::neg(mp::from_mpq(x, p)));
  });
}

// 1 - e^-x for exact x >= 0.
inline Real one_minus_exp_neg(const mpq_class& x) {
  if (x == 0) return Real::exact(mpq_class(0));
  return Real::computed("1-exp(-" + x.get_str() + ")", [x](mpfr_prec_t p) {
    return mp::neg(mp::expm1(mp::neg(mp::from_mpq(x, p))));
  });
}

inline Real inv_e() { return exp_neg(mpq_class(1)); }

}  // namespace reals

// Sign of x - d. Throws EnclosureBudgetExceeded if x == d cannot be ruled out.
inline int compare(const Real& x, const Dyadic& d, std::uint64_t budget_bits = 4096) {
  if (x.is_exact()) {
    const int c = cmp(*x.exact_value(), d.to_mpq());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  for (std::uint64_t k = 16;; k *= 2) {
    const RealEnclosure e = x.enclose(std::min(k, budget_bits));
    if (e.hi < d) return -1;
    if (e.lo > d) return 1;
    if (k >= budget_bits) break;
  }
  throw EnclosureBudgetExceeded("cannot separate " + x.name() + " from " + d.to_string());
}

// x < d, deciding x >= d from a lower bound that reaches d.
inline bool less_than(const Real& x, const Dyadic& d, std::uint64_t budget_bits = 4096) {
  if (x.is_exact()) return cmp(*x.exact_value(), d.to_mpq()) < 0;
  for (std::uint64_t k = 16;; k *= 2) {
    const RealEnclosure e = x.enclose(std::min(k, budget_bits));
    if (e.hi < d) return true;
    if (e.lo >= d) return false;
    if (k >= budget_bits) break;
  }
  throw EnclosureBudgetExceeded("cannot decide " + x.name() + " < " + d.to_string());
}

// floor(x * 2^j).
inline mpz_class scaled_floor(const Real& x, std::uint64_t j, std::uint64_t budget_bits = 4096) {
  if (x.is_exact()) {
    mpz_class num = x.exact_value()->get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), j);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), x.exact_value()->get_den().get_mpz_t());
    return f;
  }
  for (std::uint64_t extra = 8;; extra *= 2) {
    const std::uint64_t k = j + std::min(extra, budget_bits);
    const RealEnclosure e = x.enclose(k);
    const mpz_class n = e.lo.floor_scaled(j);
    if (e.hi < Dyadic(n + 1, j)) return n;
    if (extra >= budget_bits) break;
  }
  throw DigitUndecidable("cannot decide floor(" + x.name() + " * 2^" + std::to_string(j) + ")");
}

// Binary digits of a probability: p = sum_j b_j 2^-j, terminating form.
class ProbabilityExpansion {
 public:
  ProbabilityExpansion() = default;
  explicit ProbabilityExpansion(Real p, std::uint64_t budget_bits = 4096)
      : p_(std::move(p)), budget_(budget_bits) {}

  bool digit(std::uint64_t j) const {
    if (j == 0) throw InvalidInput("digit index starts at 1");
    const mpz_class f = scaled_floor(p_, j, budget_);
    return mpz_odd_p(f.get_mpz_t()) != 0;
  }

  // sum_{i<=k} b_i 2^-i
  Dyadic partial_sum(std::uint64_t k) const { return Dyadic(scaled_floor(p_, k, budget_), k); }

  bool is_exact() const { return p_.is_exact(); }
  const Real& value() const { return p_; }

 private:
  Real p_;
  std::uint64_t budget_ = 4096;
};

inline bool expansion_digit(const ProbabilityExpansion& p, std::uint64_t j) { return p.digit(j); }

enum class Containment { inside, disjoint, straddling, undecided };

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::inside: return "inside";
    case Containment::disjoint: return "disjoint";
    case Containment::straddling: return "straddling";
    case Containment::undecided: return "undecided";
  }
  return "?";
}

// Relation of I to the cell [cell_lo, cell_hi), judged from enclosures only.
inline Containment interval_inside(const DyadicInterval& i, const RealEnclosure& cell_lo,
                                   const RealEnclosure& cell_hi) {
  const Dyadic a = i.lower();
  const Dyadic b = i.upper();
  const bool lo_le_a = !cell_lo.upper_infinite && cell_lo.hi <= a;
  const bool b_le_hi = cell_hi.upper_infinite || (!cell_hi.lower_infinite && b <= cell_hi.lo);
  if (lo_le_a && b_le_hi) return Containment::inside;
  const bool before = !cell_lo.lower_infinite && b <= cell_lo.lo;
  const bool after = !cell_hi.upper_infinite && cell_hi.hi <= a;
  if (before || after) return Containment::disjoint;
  const bool meets = !cell_lo.upper_infinite && cell_lo.hi < b && !cell_hi.lower_infinite && a < cell_hi.lo;
  const bool sticks_out = (!cell_lo.lower_infinite && a < cell_lo.lo) ||
                          (!cell_hi.upper_infinite && cell_hi.hi < b);
  if (meets && sticks_out) return Containment::straddling;
  return Containment::undecided;
}

// Refines the cell endpoints until the relation is decided or the budget ends.
inline Containment interval_inside(const DyadicInterval& i, const Real& cell_lo, const Real& cell_hi,
                                   std::uint64_t budget_bits = 4096) {
  Containment c = Containment::undecided;
  for (std::uint64_t k = i.depth() + 8;; k *= 2) {
    const std::uint64_t kk = std::min(k, budget_bits);
    c = interval_inside(i, cell_lo.enclose(kk), cell_hi.enclose(kk));
    if (c != Containment::undecided || kk >= budget_bits) return c;
  }
}

}  // namespace fairbits
