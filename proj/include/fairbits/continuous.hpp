#pragma once

// Samplers for continuous laws with an absolute accuracy guarantee: every
// output y satisfies |y - X| <= eps for a target X built from the same bits.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/detail/mpfr.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/real.hpp"

namespace fairbits {

// Smallest m >= 0 with 2^-m <= eps.
inline std::uint64_t bits_for(const Dyadic& eps) {
  if (eps.sign() <= 0) throw InvalidInput("accuracy must be positive");
  const auto top = static_cast<std::int64_t>(mpz_sizeinbase(eps.numerator().get_mpz_t(), 2)) - 1;
  const std::int64_t m = static_cast<std::int64_t>(eps.scale()) - top;
  return m > 0 ? static_cast<std::uint64_t>(m) : 0;
}

class QuantileOracle {
 public:
  using Evaluator = std::function<mp::Interval(const Dyadic& u, mpfr_prec_t prec)>;

  QuantileOracle(std::string name, Evaluator eval, bool lower_unbounded, bool upper_unbounded,
                 bool exact_identity = false)
      : name_(std::move(name)),
        eval_(std::move(eval)),
        lower_unbounded_(lower_unbounded),
        upper_unbounded_(upper_unbounded),
        identity_(exact_identity) {}

  const std::string& name() const { return name_; }
  bool lower_unbounded() const { return lower_unbounded_; }
  bool upper_unbounded() const { return upper_unbounded_; }

  // Enclosure of F^-1(u) with width <= 2^-k; infinite endpoints are flagged.
  RealEnclosure at(const Dyadic& u, std::uint64_t k) const {
    if (u.sign() < 0 || u > Dyadic(1)) throw InvalidInput("quantile argument outside [0, 1]");
    if (identity_) return point_enclosure(u);
    if (u.is_zero() && lower_unbounded_) return {Dyadic(), Dyadic(), true, false};
    if (u == Dyadic(1) && upper_unbounded_) return {Dyadic(), Dyadic(), false, true};
    const Dyadic raw_target = Dyadic::pow2(-static_cast<long>(k) - 1);
    for (auto prec = static_cast<mpfr_prec_t>(k) + 64; prec <= Real::kMaxPrecision; prec *= 2) {
      const mp::Interval iv = eval_(u, prec);
      if (iv.lo.is_inf() || iv.hi.is_inf() || iv.lo.is_nan() || iv.hi.is_nan()) continue;
      if (mp::to_dyadic(iv.hi) - mp::to_dyadic(iv.lo) <= raw_target) return to_enclosure(iv, k + 2);
    }
    throw NonterminatingQuantile("quantile " + name_ + " does not narrow at u=" + u.to_string());
  }

  // Identity on [0, 1], evaluated exactly.
  static QuantileOracle uniform() {
    return QuantileOracle("uniform", [](const Dyadic& u, mpfr_prec_t p) { return mp::point(u, p); }, false,
                          false, true);
  }

  // -ln(1 - u)
  static QuantileOracle exponential() {
    return QuantileOracle(
        "exponential",
        [](const Dyadic& u, mpfr_prec_t p) { return mp::neg(mp::log1p(mp::neg(mp::point(u, p)))); }, false,
        true);
  }

  // Exponential conditioned on [0, 1): -ln(1 - u (1 - 1/e)).
  static QuantileOracle truncated_exponential() {
    return QuantileOracle(
        "truncated-exponential",
        [](const Dyadic& u, mpfr_prec_t p) {
          const mp::Interval c = mp::expm1(mp::from_si(-1, p));
          return mp::neg(mp::log1p(mp::mul(mp::point(u, p), c)));
        },
        false, false);
  }

  // sqrt(-2 ln(1 - u)), density r e^{-r^2/2}.
  static QuantileOracle maxwell() {
    return QuantileOracle(
        "maxwell",
        [](const Dyadic& u, mpfr_prec_t p) {
          return mp::sqrt(mp::mul_2si(mp::neg(mp::log1p(mp::neg(mp::point(u, p)))), 1));
        },
        false, true);
  }

  // Maxwell conditioned on [0, 1]: sqrt(-2 ln(1 - u q)), q = 1 - e^{-1/2}.
  static QuantileOracle maxwell_left() {
    return QuantileOracle(
        "maxwell-left",
        [](const Dyadic& u, mpfr_prec_t p) {
          const mp::Interval q = mp::neg(mp::expm1(mp::mul_2si(mp::from_si(-1, p), -1)));
          const mp::Interval inner = mp::log1p(mp::neg(mp::mul(mp::point(u, p), q)));
          return mp::sqrt(mp::mul_2si(mp::neg(inner), 1));
        },
        false, false);
  }

  // Maxwell conditioned on [1, inf): sqrt(1 - 2 ln(1 - u)).
  static QuantileOracle maxwell_right() {
    return QuantileOracle(
        "maxwell-right",
        [](const Dyadic& u, mpfr_prec_t p) {
          const mp::Interval l = mp::log1p(mp::neg(mp::point(u, p)));
          return mp::sqrt(mp::sub(mp::from_si(1, p), mp::mul_2si(l, 1)));
        },
        false, true);
  }

  mp::Interval evaluate(const Dyadic& u, mpfr_prec_t prec) const { return eval_(u, prec); }

 private:
  std::string name_;
  Evaluator eval_;
  bool lower_unbounded_;
  bool upper_unbounded_;
  bool identity_;
};

struct EpsilonSample {
  Dyadic y;
  std::uint64_t bits_used = 0;
  Dyadic eps;
  DyadicInterval u_interval;  // bits read, as an interval of U
};

// Number of refinements after which invert_eps gives up.
inline constexpr std::uint64_t kInversionDepthGuard = 2048;

// Refines U one bit at a time until the quantile spread over [U, U+) is at
// most 2 eps, then returns the centre of the enclosing hull.
template <BitSource S>
EpsilonSample invert_eps(const QuantileOracle& q, const Dyadic& eps, S& src) {
  const std::uint64_t start = src.consumed();
  const std::uint64_t k = bits_for(eps) + 16;
  const Dyadic two_eps = eps.mul_2exp(1);
  DyadicInterval iv;
  RealEnclosure lower = q.at(iv.lower(), k);
  RealEnclosure upper = q.at(iv.upper(), k);
  for (;;) {
    if (!lower.lower_infinite && !upper.upper_infinite && upper.hi - lower.lo <= two_eps) {
      return {(lower.lo + upper.hi).half(), src.consumed() - start, eps, iv};
    }
    if (iv.depth() >= kInversionDepthGuard) {
      throw NonterminatingQuantile("quantile " + q.name() + " did not reach accuracy " + eps.to_string());
    }
    const bool b = src.next_bit();
    iv = iv.refine(b);
    if (b) {
      lower = q.at(iv.lower(), k);
    } else {
      upper = q.at(iv.upper(), k);
    }
  }
}

// Distribution function for the partition sampler.
struct CdfOracle {
  std::string name;
  std::function<Real(const Dyadic& x)> cdf;
  std::optional<Dyadic> support_end;  // F(x) = 1 for x >= support_end

  static CdfOracle uniform() {
    return {"uniform", [](const Dyadic& x) { return Real::exact(min(x, Dyadic(1))); }, Dyadic(1)};
  }
  static CdfOracle exponential() {
    return {"exponential", [](const Dyadic& x) { return reals::one_minus_exp_neg(x.to_mpq()); }, std::nullopt};
  }
};

// Cells [2 eps m, 2 eps (m+1)), m >= 0, chosen by hh_sample; returns the centre.
class PartitionSampler {
 public:
  PartitionSampler(const CdfOracle& cdf, const Dyadic& eps) : eps_(eps) {
    if (eps.sign() <= 0) throw InvalidInput("accuracy must be positive");
    const Dyadic width = eps.mul_2exp(1);
    std::optional<std::uint64_t> n;
    if (cdf.support_end) {
      const mpq_class cells = cdf.support_end->to_mpq() / width.to_mpq();
      mpz_class c;
      mpz_cdiv_q(c.get_mpz_t(), cells.get_num_mpz_t(), cells.get_den_mpz_t());
      n = std::max<std::uint64_t>(1, c.get_ui());
    }
    auto f = cdf.cdf;
    cells_ = DiscreteDistribution::from_cumulative(
        cdf.name + " cells", n,
        [f, width](std::uint64_t i) { return f(width * Dyadic(static_cast<long>(i))); });
  }

  const DiscreteDistribution& cells() const { return cells_; }
  const Dyadic& eps() const { return eps_; }

  Dyadic centre(std::uint64_t cell) const {
    return eps_.mul_2exp(1) * Dyadic(static_cast<long>(cell - 1)) + eps_;
  }

  template <BitSource S>
  EpsilonSample operator()(S& src) const {
    const SampleOutcome o = hh_sample(cells_, src);
    return {centre(o.value), o.bits_used, eps_, o.interval};
  }

 private:
  Dyadic eps_;
  DiscreteDistribution cells_ = DiscreteDistribution::from_rationals({mpq_class(1)});
};

template <BitSource S>
EpsilonSample partition_sample_1d(const PartitionSampler& sampler, S& src) {
  return sampler(src);
}

struct BernoulliOutcome {
  bool value = false;
  std::uint64_t bits_used = 0;
};

// 1 iff U < p, comparing bits of U with digits of p until they differ.
template <BitSource S>
BernoulliOutcome bernoulli_sample(const ProbabilityExpansion& p, S& src) {
  if (p.is_exact()) {
    const mpq_class& v = *p.value().exact_value();
    if (v == 0) return {false, 0};
    if (v == 1) return {true, 0};
  }
  const std::uint64_t start = src.consumed();
  for (std::uint64_t j = 1;; ++j) {
    const bool u = src.next_bit();
    const bool b = p.digit(j);
    if (u != b) return {!u && b, src.consumed() - start};
  }
}

// Shared tables for exponential sampling: the geometric integer part, the
// Bernoulli weights p_j = 1 / (1 + e^{2^-j}) of the fractional digits, and
// the joint law of the first k digits.
class ExponentialTables {
 public:
  static const ExponentialTables& shared() {
    static const ExponentialTables tables;
    return tables;
  }

  const DiscreteDistribution& geometric() const { return geometric_; }

  const ProbabilityExpansion& digit_weight(std::uint64_t j) const {
    std::lock_guard lock(mu_);
    while (weights_.size() < j) {
      const auto jj = static_cast<long>(weights_.size() + 1);
      weights_.emplace_back(Real::computed("1/(1+e^2^-" + std::to_string(jj) + ")", [jj](mpfr_prec_t p) {
        const mp::Interval one = mp::from_si(1, p);
        return mp::div(one, mp::add(one, mp::exp(mp::mul_2si(one, -jj))));
      }));
    }
    return weights_[j - 1];
  }

  // Law of the k-digit prefix a / 2^k, atom a + 1 for a in [0, 2^k).
  const DiscreteDistribution& digit_vector(std::uint64_t k) const {
    if (k == 0 || k > 16) throw InvalidInput("digit vector length must be in [1, 16]");
    std::vector<Real> w;
    for (std::uint64_t j = 1; j <= k; ++j) w.push_back(digit_weight(j).value());
    std::lock_guard lock(mu_);
    auto it = vectors_.find(k);
    if (it != vectors_.end()) return it->second;
    std::vector<Real> probs;
    const std::uint64_t n = std::uint64_t{1} << k;
    probs.reserve(n);
    for (std::uint64_t a = 0; a < n; ++a) {
      probs.push_back(Real::computed("digits(" + std::to_string(a) + ")", [w, a, k](mpfr_prec_t p) {
        const mp::Interval one = mp::from_si(1, p);
        mp::Interval r = one;
        for (std::uint64_t j = 1; j <= k; ++j) {
          const mp::Interval pj = w[j - 1].interval(p);
          const bool bit = ((a >> (k - j)) & 1U) != 0;
          r = mp::mul(r, bit ? pj : mp::sub(one, pj));
        }
        return r;
      }));
    }
    auto [pos, inserted] = vectors_.emplace(
        k, DiscreteDistribution::from_reals(std::move(probs), "exp-digits-" + std::to_string(k)));
    return pos->second;
  }

 private:
  ExponentialTables() : geometric_(DiscreteDistribution::geometric_one_over_e()) {}

  DiscreteDistribution geometric_;
  mutable std::mutex mu_;
  mutable std::deque<ProbabilityExpansion> weights_;
  mutable std::map<std::uint64_t, DiscreteDistribution> vectors_;
};

enum class FractionMethod { raw, ky };

// Fractional part of an exponential: sum_{j<=k} 2^-j B_j with independent
// B_j ~ Bernoulli(p_j), k = bits_for(eps). The omitted digits move the value
// by less than 2^-k <= eps.
template <BitSource S>
EpsilonSample exp_frac_convolution(const Dyadic& eps, S& src, FractionMethod method = FractionMethod::raw) {
  const auto& tables = ExponentialTables::shared();
  const std::uint64_t k = std::max<std::uint64_t>(1, bits_for(eps));
  const std::uint64_t start = src.consumed();
  if (method == FractionMethod::ky) {
    const SampleOutcome o = ky_sample(tables.digit_vector(k), src);
    return {Dyadic(mpz_class(static_cast<unsigned long>(o.value - 1)), k), src.consumed() - start, eps,
            DyadicInterval::unit()};
  }
  mpz_class acc = 0;
  for (std::uint64_t j = 1; j <= k; ++j) {
    const BernoulliOutcome b = bernoulli_sample(tables.digit_weight(j), src);
    acc = acc * 2 + (b.value ? 1 : 0);
  }
  return {Dyadic(acc, k), src.consumed() - start, eps, DyadicInterval::unit()};
}

enum class ExponentialRoute { inversion, convolution, convolution_ky };

struct ExponentialSample {
  Dyadic value;
  std::uint64_t bits_used = 0;
  std::uint64_t integer_part = 0;
  std::uint64_t integer_bits = 0;
  EpsilonSample fraction;
};

// Integer part exactly (geometric, parameter 1/e), fractional part to eps.
template <BitSource S>
ExponentialSample exp_sample(const Dyadic& eps, S& src, ExponentialRoute route) {
  const auto& tables = ExponentialTables::shared();
  const std::uint64_t start = src.consumed();
  const SampleOutcome whole = hh_sample(tables.geometric(), src);
  ExponentialSample out;
  out.integer_part = whole.value - 1;
  out.integer_bits = whole.bits_used;
  switch (route) {
    case ExponentialRoute::inversion:
      out.fraction = invert_eps(QuantileOracle::truncated_exponential(), eps, src);
      break;
    case ExponentialRoute::convolution:
      out.fraction = exp_frac_convolution(eps, src, FractionMethod::raw);
      break;
    case ExponentialRoute::convolution_ky:
      out.fraction = exp_frac_convolution(eps, src, FractionMethod::ky);
      break;
  }
  out.value = Dyadic(static_cast<long>(out.integer_part)) + out.fraction.y;
  out.bits_used = src.consumed() - start;
  return out;
}

// P(Maxwell <= 1) = 1 - e^{-1/2}.
inline const ProbabilityExpansion& maxwell_left_mass() {
  static const ProbabilityExpansion q(reals::one_minus_exp_neg(mpq_class(1, 2)));
  return q;
}

struct MaxwellSample {
  Dyadic value;
  std::uint64_t bits_used = 0;
  bool left_piece = false;
  std::uint64_t piece_bits = 0;
  EpsilonSample piece;
};

// Chooses the piece [0, 1] or [1, inf) by a Bernoulli(1 - e^{-1/2}) draw, then
// inverts the conditional quantile of that piece.
template <BitSource S>
MaxwellSample maxwell_sample(const Dyadic& eps, S& src) {
  static const QuantileOracle left = QuantileOracle::maxwell_left();
  static const QuantileOracle right = QuantileOracle::maxwell_right();
  const std::uint64_t start = src.consumed();
  const BernoulliOutcome b = bernoulli_sample(maxwell_left_mass(), src);
  MaxwellSample out;
  out.left_piece = b.value;
  out.piece_bits = b.bits_used;
  out.piece = invert_eps(b.value ? left : right, eps, src);
  out.value = out.piece.y;
  out.bits_used = src.consumed() - start;
  return out;
}

// (eps/2) / (radius + eps/2)
inline mpq_class angle_accuracy(const Dyadic& eps, const Dyadic& radius) {
  const mpq_class half = eps.to_mpq() / 2;
  return half / (radius.to_mpq() + half);
}

struct NormalPair {
  Dyadic first;   // M' sin(2 pi V')
  Dyadic second;  // M' cos(2 pi V')
  std::uint64_t bits_used = 0;
  MaxwellSample radius;
  EpsilonSample angle;  // V' in [0, 1)
  Dyadic eps;
};

// Margin kept back from the angle budget for rounding the outputs.
inline constexpr long kAngleMarginBits = 16;

// Polar pair: radius M' to eps/2, angle V' to delta/(2 pi) with
// delta = (eps/2)/(M' + eps/2), so that each coordinate is within eps of
// (M sin 2 pi V, M cos 2 pi V).
template <BitSource S>
NormalPair normal_pair(const Dyadic& eps, S& src) {
  static const QuantileOracle uniform = QuantileOracle::uniform();
  const std::uint64_t start = src.consumed();
  NormalPair out;
  out.eps = eps;
  out.radius = maxwell_sample(eps.half(), src);
  const Dyadic& m = out.radius.value;

  mpq_class delta = angle_accuracy(eps, m);
  delta *= mpq_class(1) - Dyadic::pow2(-kAngleMarginBits).to_mpq();
  constexpr mpfr_prec_t kPrec = 64;
  const mp::Interval two_pi = mp::mul_2si(mp::pi(kPrec), 1);
  mp::Float v_acc(kPrec);
  mpfr_div(v_acc.get(), mp::from_mpq(delta, kPrec).lo.get(), two_pi.hi.get(), MPFR_RNDD);
  out.angle = invert_eps(uniform, mp::to_dyadic(v_acc), src);

  const std::uint64_t grid = bits_for(eps) + 20;
  const Dyadic max_width = eps.mul_2exp(-17);
  for (mpfr_prec_t p = static_cast<mpfr_prec_t>(grid) + 64;; p *= 2) {
    const mp::Interval theta = mp::mul(mp::mul_2si(mp::pi(p), 1), mp::point(out.angle.y, p));
    const mp::Interval r = mp::point(m, p);
    const RealEnclosure s = to_enclosure(mp::mul(r, mp::sin(theta)), grid);
    const RealEnclosure c = to_enclosure(mp::mul(r, mp::cos(theta)), grid);
    if (s.width() <= max_width && c.width() <= max_width) {
      out.first = s.midpoint();
      out.second = c.midpoint();
      break;
    }
    if (p > Real::kMaxPrecision) throw EnclosureBudgetExceeded("normal pair rounding");
  }
  out.bits_used = src.consumed() - start;
  return out;
}

}  // namespace fairbits
