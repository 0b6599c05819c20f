#pragma once

// Exact dyadic rationals num / 2^scale and the half-open dyadic intervals that
// bit-driven samplers refine one coin flip at a time.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "fairbits/errors.hpp"

namespace fairbits {

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Dyadic(mpz_class num, std::uint64_t scale) : num_(std::move(num)), scale_(scale) { normalize(); }

  // 2^exponent for any integer exponent.
  static Dyadic pow2(long exponent) {
    if (exponent >= 0) {
      mpz_class n = 1;
      mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
      return Dyadic(std::move(n), 0);
    }
    return Dyadic(mpz_class(1), static_cast<std::uint64_t>(-exponent));
  }

  // Exact value of q when q is dyadic.
  static Dyadic from_mpq(const mpq_class& q) {
    const mpz_class& den = q.get_den();
    const auto tz = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class odd;
    mpz_tdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), tz);
    if (odd != 1) throw InvalidInput("rational " + q.get_str() + " is not dyadic");
    return Dyadic(q.get_num(), tz);
  }

  const mpz_class& numerator() const { return num_; }
  std::uint64_t scale() const { return scale_; }
  int sign() const { return sgn(num_); }
  bool is_zero() const { return num_ == 0; }

  // floor(value * 2^k)
  mpz_class floor_scaled(std::uint64_t k) const {
    mpz_class out;
    if (k >= scale_) {
      mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), k - scale_);
    } else {
      mpz_fdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), scale_ - k);
    }
    return out;
  }

  // ceil(value * 2^k)
  mpz_class ceil_scaled(std::uint64_t k) const {
    mpz_class out;
    if (k >= scale_) {
      mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), k - scale_);
    } else {
      mpz_cdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), scale_ - k);
    }
    return out;
  }

  // Numerator of this value over the common denominator 2^k (k >= scale()).
  mpz_class at_scale(std::uint64_t k) const {
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), k - scale_);
    return out;
  }

  Dyadic mul_2exp(long e) const {
    if (e >= 0) {
      const auto ue = static_cast<std::uint64_t>(e);
      if (ue <= scale_) return Dyadic(num_, scale_ - ue);
      mpz_class n;
      mpz_mul_2exp(n.get_mpz_t(), num_.get_mpz_t(), ue - scale_);
      return Dyadic(std::move(n), 0);
    }
    return Dyadic(num_, scale_ + static_cast<std::uint64_t>(-e));
  }
  Dyadic half() const { return mul_2exp(-1); }

  mpq_class to_mpq() const {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), scale_);
    mpq_class q(num_, den);
    q.canonicalize();
    return q;
  }

  double to_double() const {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, num_.get_mpz_t());
    return std::ldexp(mant, static_cast<int>(exp - static_cast<long>(scale_)));
  }

  // "num/2^scale", or the plain integer when scale is 0.
  std::string to_string() const {
    if (scale_ == 0) return num_.get_str();
    return num_.get_str() + "/2^" + std::to_string(scale_);
  }

  // Exact terminating decimal expansion.
  std::string to_decimal() const {
    if (scale_ == 0) return num_.get_str();
    mpz_class five_pow;
    mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, scale_);
    mpz_class scaled = abs(num_) * five_pow;
    std::string digits = scaled.get_str();
    if (digits.size() <= scale_) digits.insert(0, scale_ - digits.size() + 1, '0');
    digits.insert(digits.size() - scale_, ".");
    return (num_ < 0 ? "-" : "") + digits;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const auto s = std::max(a.scale_, b.scale_);
    return Dyadic(a.at_scale(s) + b.at_scale(s), s);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const auto s = std::max(a.scale_, b.scale_);
    return Dyadic(a.at_scale(s) - b.at_scale(s), s);
  }
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num_, a.scale_); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.scale_ + b.scale_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.scale_ == b.scale_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const auto s = std::max(a.scale_, b.scale_);
    const int c = cmp(a.at_scale(s), b.at_scale(s));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  void normalize() {
    if (num_ == 0) {
      scale_ = 0;
      return;
    }
    const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
    const auto shift = std::min<std::uint64_t>(tz, scale_);
    if (shift > 0) {
      mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
      scale_ -= shift;
    }
  }

  mpz_class num_ = 0;
  std::uint64_t scale_ = 0;
};

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

inline int compare(const mpq_class& q, const Dyadic& d) { return cmp(q, d.to_mpq()); }

// Half-open interval [lo / 2^depth, hi / 2^depth) with 0 <= lo < hi <= 2^depth.
class DyadicInterval {
 public:
  DyadicInterval() : lo_(0), hi_(1), depth_(0) {}

  DyadicInterval(mpz_class lo, mpz_class hi, std::uint64_t depth)
      : lo_(std::move(lo)), hi_(std::move(hi)), depth_(depth) {
    mpz_class top = 1;
    mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), depth_);
    if (lo_ < 0 || lo_ >= hi_ || hi_ > top) throw InvalidInput("invalid dyadic interval");
  }

  static DyadicInterval unit() { return {}; }

  // Left half for bit 0, right half for bit 1.
  DyadicInterval refine(bool bit) const {
    DyadicInterval out;
    out.depth_ = depth_ + 1;
    const mpz_class mid = lo_ + hi_;
    if (bit) {
      out.lo_ = mid;
      out.hi_ = hi_ * 2;
    } else {
      out.lo_ = lo_ * 2;
      out.hi_ = mid;
    }
    return out;
  }

  Dyadic lower() const { return Dyadic(lo_, depth_); }
  Dyadic upper() const { return Dyadic(hi_, depth_); }
  Dyadic width() const { return Dyadic(hi_ - lo_, depth_); }
  Dyadic midpoint() const { return Dyadic(lo_ + hi_, depth_ + 1); }

  const mpz_class& lo_numerator() const { return lo_; }
  const mpz_class& hi_numerator() const { return hi_; }
  std::uint64_t depth() const { return depth_; }

  bool contains(const Dyadic& x) const { return lower() <= x && x < upper(); }

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.lower() == b.lower() && a.upper() == b.upper();
  }

 private:
  mpz_class lo_;
  mpz_class hi_;
  std::uint64_t depth_;
};

inline DyadicInterval refine(const DyadicInterval& interval, bool bit) { return interval.refine(bit); }

// Interval [0.b1...bt, 0.b1...bt + 2^-t) reached from [0, 1) by the given bits.
template <typename Bits>
DyadicInterval path_interval(const Bits& bits) {
  DyadicInterval iv;
  for (const bool b : bits) iv = iv.refine(b);
  return iv;
}

}  // namespace fairbits
