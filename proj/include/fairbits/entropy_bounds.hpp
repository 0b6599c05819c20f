#pragma once

// Differential entropies, partition entropies and the bit-cost bounds for
// eps-accurate sampling.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fairbits/detail/mpfr.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/real.hpp"

namespace fairbits {

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

// Volume of the unit l_p ball in R^d: (2 Gamma(1/p + 1))^d / Gamma(d/p + 1).
inline double unit_ball_volume(unsigned d, double p) {
  if (d == 0) throw InvalidInput("dimension must be positive");
  if (!(p >= 1)) throw InvalidInput("norm p must be at least 1");
  if (std::isinf(p)) return std::ldexp(1.0, static_cast<int>(d));
  const double dd = d;
  return std::exp(dd * (std::log(2.0) + std::lgamma(1.0 / p + 1.0)) - std::lgamma(dd / p + 1.0));
}

// E(f) + d log2(1/eps) - log2 V_{d,p}
inline double lower_bound_bits(double entropy, unsigned d, double eps, double p) {
  if (!(eps > 0)) throw InvalidInput("accuracy must be positive");
  return entropy + d * std::log2(1.0 / eps) - std::log2(unit_ball_volume(d, p));
}

// Partition sampler on cubes of side 2 eps / d^{1/p}: E(f) + d log2(1/eps) + c - d
// (+ (d/p) log2 d for finite p), c = 2 for KY and 3 for HH.
inline double partition_upper_bound(double entropy, unsigned d, double eps, double p, Algorithm algo) {
  if (!(eps > 0)) throw InvalidInput("accuracy must be positive");
  const double c = algo == Algorithm::ky ? 2.0 : 3.0;
  double bound = entropy + d * std::log2(1.0 / eps) + c - d;
  if (!std::isinf(p) && d > 1) bound += (d / p) * std::log2(static_cast<double>(d));
  return bound;
}

// Upper minus lower bound for the KY partition sampler.
inline double d_gap(unsigned d, double p) {
  return partition_upper_bound(0, d, 1, p, Algorithm::ky) - lower_bound_bits(0, d, 1, p);
}

inline double scale_entropy(double entropy, double a) {
  if (!(a > 0)) throw InvalidInput("scale must be positive");
  return entropy + std::log2(a);
}

// Differential entropy in bits of a named law.
inline Real diff_entropy_catalog(const std::string& name) {
  using mp::Interval;
  auto log2e = [](mpfr_prec_t p) { return mp::div(mp::from_si(1, p), mp::log2_const(p)); };
  if (name == "uniform") return Real::exact(mpq_class(0));
  if (name == "exponential") return Real::computed("log2(e)", log2e);
  if (name == "normal") {
    return Real::computed("log2(sqrt(2 pi e))", [](mpfr_prec_t p) {
      const Interval two_pi_e = mp::mul(mp::mul_2si(mp::pi(p), 1), mp::exp(mp::from_si(1, p)));
      return mp::mul_2si(mp::log2(two_pi_e), -1);
    });
  }
  if (name == "normal-pair") {
    return Real::computed("log2(2 pi e)", [](mpfr_prec_t p) {
      return mp::log2(mp::mul(mp::mul_2si(mp::pi(p), 1), mp::exp(mp::from_si(1, p))));
    });
  }
  if (name == "maxwell") {
    // (1 + gamma/2 - ln(2)/2) / ln 2
    return Real::computed("maxwell entropy", [](mpfr_prec_t p) {
      const Interval ln2 = mp::log2_const(p);
      const Interval nats =
          mp::add(mp::from_si(1, p), mp::mul_2si(mp::sub(mp::euler_gamma(p), ln2), -1));
      return mp::div(nats, ln2);
    });
  }
  if (name == "truncated-exponential") {
    // log2(e - 1) - log2(e) / (e - 1)
    return Real::computed("truncated exponential entropy", [log2e](mpfr_prec_t p) {
      const Interval em1 = mp::expm1(mp::from_si(1, p));
      return mp::sub(mp::log2(em1), mp::div(log2e(p), em1));
    });
  }
  throw UnknownLaw("no differential entropy for law '" + name + "'");
}

// Enclosure of sum_A P(A) log2(1/P(A)) over listed cells, plus [0, tail_bound]
// for the cells not listed.
inline RealEnclosure partition_entropy(const std::vector<mp::Interval>& cells, const Dyadic& tail_bound,
                                       std::uint64_t grid = 60) {
  mpfr_prec_t prec = 64;
  for (const auto& c : cells) prec = std::max(prec, c.prec());
  mp::Interval total = mp::from_si(0, prec);
  for (const auto& c : cells) total = mp::add(total, detail::entropy_term(c));
  RealEnclosure e = to_enclosure(total, grid);
  e.hi = e.hi + tail_bound;
  return e;
}

namespace detail {

// Bound on the entropy of the cells of width h beyond a cutoff carrying mass
// at most m, where mean_excess bounds E[(X - cutoff)^+]:
//   m log2(1/m) + m + mean_excess / h.
inline Dyadic cell_tail_bound(const mp::Float& m_up, const mp::Float& mean_excess_up, const Dyadic& h) {
  const mpfr_prec_t p = 96;
  mp::Interval m(m_up, m_up);
  mp::Interval t = entropy_term(m);
  mp::Interval excess(mean_excess_up, mean_excess_up);
  mp::Interval total = mp::add(mp::add(t, m), mp::div(excess, mp::point(h, p)));
  return mp::to_dyadic(total.hi);
}

inline std::uint64_t cells_up_to(const Dyadic& x, const Dyadic& h) {
  mpq_class q = x.to_mpq() / h.to_mpq();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_ui();
}

}  // namespace detail

// Entropy of the partition of a catalog law into cells [m h, (m+1) h), m in Z.
inline RealEnclosure cell_partition_entropy(const std::string& law, const Dyadic& h) {
  if (h.sign() <= 0) throw InvalidInput("cell width must be positive");
  constexpr mpfr_prec_t p = 96;
  const mp::Interval hh = mp::point(h, p);
  const mp::Interval one = mp::from_si(1, p);
  std::vector<mp::Interval> cells;

  if (law == "uniform") {
    const std::uint64_t n = detail::cells_up_to(Dyadic(1), h);
    for (std::uint64_t m = 0; m + 1 < n; ++m) cells.push_back(hh);
    cells.push_back(mp::sub(one, mp::mul(hh, mp::from_si(static_cast<long>(n - 1), p))));
    return partition_entropy(cells, Dyadic());
  }
  if (law == "exponential") {
    // Geometric cell masses (1 - q) q^m with q = e^{-h}:
    // H = -log2(1 - q) + h log2(e) q / (1 - q).
    const mp::Interval one_minus_q = mp::neg(mp::expm1(mp::neg(hh)));
    const mp::Interval q = mp::exp(mp::neg(hh));
    const mp::Interval log2e = mp::div(one, mp::log2_const(p));
    const mp::Interval hv =
        mp::add(mp::neg(mp::log2(one_minus_q)), mp::div(mp::mul(mp::mul(hh, log2e), q), one_minus_q));
    return to_enclosure(hv, 60);
  }
  if (law == "truncated-exponential") {
    const std::uint64_t n = detail::cells_up_to(Dyadic(1), h);
    const mp::Interval norm = mp::neg(mp::expm1(mp::from_si(-1, p)));
    for (std::uint64_t m = 0; m < n; ++m) {
      const mp::Interval a = mp::mul(hh, mp::from_si(static_cast<long>(m), p));
      const mp::Interval b = m + 1 == n ? one : mp::mul(hh, mp::from_si(static_cast<long>(m + 1), p));
      const mp::Interval mass = mp::sub(mp::exp(mp::neg(a)), mp::exp(mp::neg(b)));
      cells.push_back(mp::div(mass, norm));
    }
    return partition_entropy(cells, Dyadic());
  }
  if (law == "normal") {
    // Cells mirror around 0; positive side up to 9, both tails bounded.
    const Dyadic cutoff(9);
    const std::uint64_t n = detail::cells_up_to(cutoff, h);
    const mp::Interval inv_sqrt2 = mp::div(one, mp::sqrt(mp::from_si(2, p)));
    mp::Interval prev = mp::erfc(mp::from_si(0, p));
    for (std::uint64_t m = 0; m < n; ++m) {
      const mp::Interval b = mp::mul(hh, mp::from_si(static_cast<long>(m + 1), p));
      const mp::Interval next = mp::erfc(mp::mul(b, inv_sqrt2));
      const mp::Interval mass = mp::mul_2si(mp::sub(prev, next), -1);
      cells.push_back(mass);
      cells.push_back(mass);
      prev = next;
    }
    const mp::Interval tail_mass = mp::mul_2si(prev, -1);
    const Dyadic edge = h * Dyadic(static_cast<long>(n));
    // E[(X - a)^+] <= phi(a)
    const mp::Interval a = mp::point(edge, p);
    const mp::Interval phi = mp::div(mp::exp(mp::mul_2si(mp::neg(mp::mul(a, a)), -1)),
                                     mp::sqrt(mp::mul_2si(mp::pi(p), 1)));
    const Dyadic one_side = detail::cell_tail_bound(tail_mass.hi, phi.hi, h);
    return partition_entropy(cells, one_side.mul_2exp(1));
  }
  if (law == "maxwell") {
    const Dyadic cutoff(10);
    const std::uint64_t n = detail::cells_up_to(cutoff, h);
    mp::Interval prev = one;
    for (std::uint64_t m = 0; m < n; ++m) {
      const mp::Interval b = mp::mul(hh, mp::from_si(static_cast<long>(m + 1), p));
      const mp::Interval next = mp::exp(mp::mul_2si(mp::neg(mp::mul(b, b)), -1));
      cells.push_back(mp::sub(prev, next));
      prev = next;
    }
    // E[(R - a)^+] = int_a^inf e^{-r^2/2} dr <= e^{-a^2/2} / a
    const Dyadic edge = h * Dyadic(static_cast<long>(n));
    const mp::Interval excess = mp::div(prev, mp::point(edge, p));
    return partition_entropy(cells, detail::cell_tail_bound(prev.hi, excess.hi, h));
  }
  throw UnknownLaw("no cell partition for law '" + law + "'");
}

}  // namespace fairbits
