#pragma once

// Exact discrete sampling from fair coins.
//
// Atoms are indexed from 1. A distribution is either finite (rational or
// computable probabilities) or countable, given by its cumulative function
// Q(i) = p_1 + ... + p_i with Q(0) = 0.
//
// Two samplers are provided:
//   ky_sample  lazy walk of the Knuth-Yao DDG tree. Level j holds one leaf for
//              every atom whose j-th binary digit is 1; leaves take the lowest
//              offsets of the level, in ascending atom order.
//   hh_sample  interval refinement: draw bits until [lo, hi) lies inside a
//              single half-open cell [Q(i-1), Q(i)).

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/detail/mpfr.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/real.hpp"

namespace fairbits {

// Parses "a/b" or an integer.
inline mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (const char c : text) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') s.push_back(c);
  }
  if (s.empty()) throw InvalidInput("empty rational");
  for (const char c : s) {
    if (!(c == '/' || c == '-' || (c >= '0' && c <= '9'))) {
      throw InvalidInput("malformed rational '" + s + "'");
    }
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidInput("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Upper bound on sum_{i>K} p_i log2(1/p_i), given K.
using TailEntropyBound = std::function<Dyadic(std::uint64_t K)>;

class DiscreteDistribution {
 public:
  using CumulativeFn = std::function<Real(std::uint64_t)>;

  static DiscreteDistribution from_rationals(const std::vector<mpq_class>& probs, std::string name = "") {
    if (probs.empty()) throw InvalidInput("distribution needs at least one atom");
    mpq_class total = 0;
    for (const auto& p : probs) {
      if (p < 0) throw InvalidInput("negative probability " + p.get_str());
      total += p;
    }
    if (total != 1) throw InvalidInput("probabilities sum to " + total.get_str() + ", not 1");
    auto impl = std::make_shared<Impl>();
    impl->name = name.empty() ? describe(probs) : std::move(name);
    impl->size = probs.size();
    mpq_class acc = 0;
    impl->cum.push_back(Real::exact(mpq_class(0)));
    for (const auto& p : probs) {
      impl->probs.push_back(Real::exact(p));
      acc += p;
      impl->cum.push_back(Real::exact(acc));
      if (p == 1) impl->certain = impl->probs.size();
    }
    impl->finish_finite();
    return DiscreteDistribution(std::move(impl));
  }

  static DiscreteDistribution from_strings(const std::vector<std::string>& atoms, std::string name = "") {
    std::vector<mpq_class> probs;
    probs.reserve(atoms.size());
    for (const auto& a : atoms) probs.push_back(parse_rational(a));
    return from_rationals(probs, std::move(name));
  }

  // Finite law with computable probabilities. The sum is checked against 1 at
  // 60 bits; Q(n) is pinned to exactly 1.
  static DiscreteDistribution from_reals(std::vector<Real> probs, std::string name) {
    if (probs.empty()) throw InvalidInput("distribution needs at least one atom");
    {
      constexpr mpfr_prec_t kPrec = 128;
      mp::Interval total = mp::from_si(0, kPrec);
      for (const auto& p : probs) {
        const mp::Interval iv = p.interval(kPrec);
        if (iv.hi.sign() < 0) throw InvalidInput("negative probability " + p.name());
        total = mp::add(total, iv);
      }
      const RealEnclosure e = to_enclosure(total, 62);
      if (e.lo > Dyadic(1) || e.hi < Dyadic(1) || e.width() > Dyadic::pow2(-60)) {
        throw InvalidInput("probabilities of " + name + " do not sum to 1");
      }
    }
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->size = probs.size();
    impl->cum.push_back(Real::exact(mpq_class(0)));
    for (std::size_t i = 1; i <= probs.size(); ++i) {
      if (i == probs.size()) {
        impl->cum.push_back(Real::exact(mpq_class(1)));
        break;
      }
      bool all_exact = true;
      mpq_class acc = 0;
      for (std::size_t k = 0; k < i; ++k) {
        if (!probs[k].is_exact()) {
          all_exact = false;
          break;
        }
        acc += *probs[k].exact_value();
      }
      if (all_exact) {
        impl->cum.push_back(Real::exact(acc));
        continue;
      }
      std::vector<Real> prefix(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(i));
      impl->cum.push_back(Real::computed("Q(" + std::to_string(i) + ")", [prefix](mpfr_prec_t p) {
        mp::Interval s = mp::from_si(0, p);
        for (const auto& r : prefix) s = mp::add(s, r.interval(p));
        return s;
      }));
    }
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i].is_exact() && *probs[i].exact_value() == 1) impl->certain = i + 1;
    }
    impl->probs.assign(probs.begin(), probs.end());
    impl->finish_finite();
    return DiscreteDistribution(std::move(impl));
  }

  // Law given by its cumulative function; n empty means countable support.
  // For finite n, Q(n) is pinned to exactly 1.
  static DiscreteDistribution from_cumulative(std::string name, std::optional<std::uint64_t> n, CumulativeFn q,
                                              TailEntropyBound tail = {}) {
    if (n && *n == 0) throw InvalidInput("distribution needs at least one atom");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->size = n;
    impl->cum_fn = std::move(q);
    impl->tail = std::move(tail);
    impl->cum.push_back(Real::exact(mpq_class(0)));
    if (n && *n == 1) impl->certain = 1;
    return DiscreteDistribution(std::move(impl));
  }

  // P(atom k) = e^{-(k-1)} (1 - 1/e), k >= 1; Q(k) = 1 - e^{-k}.
  static DiscreteDistribution geometric_one_over_e() {
    static const DiscreteDistribution shared = [] {
      TailEntropyBound tail = [](std::uint64_t K) {
        // e^{-K} (a + b (K + 1)), a = -log2(1 - 1/e), b = log2 e.
        constexpr mpfr_prec_t p = 128;
        const mp::Interval ln2 = mp::log2_const(p);
        const mp::Interval one = mp::from_si(1, p);
        const mp::Interval e_inv = mp::exp(mp::from_si(-1, p));
        const mp::Interval a = mp::neg(mp::div(mp::log(mp::sub(one, e_inv)), ln2));
        const mp::Interval b = mp::div(one, ln2);
        const mp::Interval kk = mp::from_si(static_cast<long>(K) + 1, p);
        const mp::Interval bound =
            mp::mul(mp::exp(mp::from_si(-static_cast<long>(K), p)), mp::add(a, mp::mul(b, kk)));
        return mp::to_dyadic(bound.hi);
      };
      return from_cumulative(
          "geometric-1-over-e", std::nullopt,
          [](std::uint64_t k) { return reals::one_minus_exp_neg(mpq_class(static_cast<long>(k))); },
          std::move(tail));
    }();
    return shared;
  }

  const std::string& name() const { return impl_->name; }
  std::optional<std::uint64_t> size() const { return impl_->size; }
  bool finite() const { return impl_->size.has_value(); }

  // Atom with probability exactly 1, if any.
  std::optional<std::uint64_t> certain_atom() const { return impl_->certain; }

  const Real& cumulative(std::uint64_t i) const {
    if (impl_->size && i > *impl_->size) throw InvalidInput("atom index out of range");
    if (!impl_->cum_fn) return impl_->cum[i];
    std::lock_guard lock(impl_->mu);
    while (impl_->cum.size() <= i) {
      const std::uint64_t k = impl_->cum.size();
      if (impl_->size && k == *impl_->size) {
        impl_->cum.push_back(Real::exact(mpq_class(1)));
      } else {
        impl_->cum.push_back(impl_->cum_fn(k));
      }
    }
    return impl_->cum[i];
  }

  const Real& probability(std::uint64_t i) const {
    if (i == 0) throw InvalidInput("atoms are indexed from 1");
    if (impl_->size && i > *impl_->size) throw InvalidInput("atom index out of range");
    if (!impl_->cum_fn) return impl_->probs[i - 1];
    const Real& hi = cumulative(i);
    const Real& lo = cumulative(i - 1);
    std::lock_guard lock(impl_->mu);
    while (impl_->probs.size() < i) {
      const std::size_t k = impl_->probs.size() + 1;
      impl_->probs.push_back(k == i ? Real::difference(hi, lo)
                                    : Real::difference(impl_->cum[k], impl_->cum[k - 1]));
    }
    return impl_->probs[i - 1];
  }

  ProbabilityExpansion expansion(std::uint64_t i) const { return ProbabilityExpansion(probability(i)); }

  // Atoms owning a leaf at level j >= 1, ascending.
  const std::vector<std::uint64_t>& leaves_at_level(std::uint64_t j) const {
    if (j == 0) throw InvalidInput("levels start at 1");
    {
      std::lock_guard lock(impl_->level_mu);
      if (j <= impl_->levels.size()) return impl_->levels[j - 1];
    }
    std::vector<std::vector<std::uint64_t>> fresh;
    std::uint64_t have = 0;
    {
      std::lock_guard lock(impl_->level_mu);
      have = impl_->levels.size();
    }
    for (std::uint64_t level = have + 1; level <= j; ++level) fresh.push_back(compute_level(level));
    std::lock_guard lock(impl_->level_mu);
    for (std::uint64_t level = impl_->levels.size() + 1; level <= j; ++level) {
      impl_->levels.push_back(std::move(fresh[level - have - 1]));
    }
    return impl_->levels[j - 1];
  }

  // Smallest i >= hint with Q(i) > u, assuming Q(hint - 1) <= u < 1.
  std::uint64_t locate(const Dyadic& u, std::uint64_t hint = 1) const {
    auto above = [&](std::uint64_t i) { return !less_or_equal(cumulative(i), u); };
    std::uint64_t lo = hint;
    if (above(lo)) return lo;
    std::uint64_t step = 1;
    std::uint64_t hi = 0;
    for (;;) {
      hi = lo + step;
      if (impl_->size && hi > *impl_->size) hi = *impl_->size;
      if (above(hi)) break;
      lo = hi;
      step *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (above(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  // Q(i) >= x
  bool cumulative_reaches(std::uint64_t i, const Dyadic& x) const { return !less_than(cumulative(i), x); }

  const TailEntropyBound& tail_entropy_bound() const { return impl_->tail; }

 private:
  struct Impl {
    std::string name;
    std::optional<std::uint64_t> size;
    std::optional<std::uint64_t> certain;
    std::deque<Real> probs;
    std::deque<Real> cum;
    CumulativeFn cum_fn;
    TailEntropyBound tail;
    std::mutex mu;
    std::mutex level_mu;
    std::deque<std::vector<std::uint64_t>> levels;
    std::vector<bool> zero_mass;

    void finish_finite() {
      zero_mass.assign(probs.size(), false);
      for (std::size_t i = 0; i < probs.size(); ++i) {
        zero_mass[i] = probs[i].is_exact() && *probs[i].exact_value() == 0;
      }
    }
  };

  explicit DiscreteDistribution(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  static bool less_or_equal(const Real& x, const Dyadic& u) {
    if (x.is_exact()) return cmp(*x.exact_value(), u.to_mpq()) <= 0;
    return compare(x, u) < 0;
  }

  std::vector<std::uint64_t> compute_level(std::uint64_t j) const {
    std::vector<std::uint64_t> out;
    if (impl_->size) {
      for (std::uint64_t i = 1; i <= *impl_->size; ++i) {
        if (!impl_->cum_fn && impl_->zero_mass[i - 1]) continue;
        if (expansion(i).digit(j)) out.push_back(i);
      }
      return out;
    }
    // Countable: once Q(i-1) > 1 - 2^-j, every later atom is below 2^-j.
    const Dyadic cutoff = Dyadic(1) - Dyadic::pow2(-static_cast<long>(j));
    for (std::uint64_t i = 1;; ++i) {
      if (compare(cumulative(i - 1), cutoff) > 0) break;
      if (expansion(i).digit(j)) out.push_back(i);
    }
    return out;
  }

  static std::string describe(const std::vector<mpq_class>& probs) {
    std::string s = "(";
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (i) s += ",";
      s += probs[i].get_str();
    }
    return s + ")";
  }

  std::shared_ptr<Impl> impl_;
};

// Leaf through which a sampler exited. Its probability is exactly 2^-depth.
// rank orders the leaves of one symbol within the same depth.
struct ExitLeaf {
  std::uint64_t depth = 0;
  std::uint64_t rank = 0;

  friend bool operator==(const ExitLeaf&, const ExitLeaf&) = default;
  friend auto operator<=>(const ExitLeaf&, const ExitLeaf&) = default;
};

struct SampleOutcome {
  std::uint64_t value = 0;
  std::uint64_t bits_used = 0;
  ExitLeaf leaf;
  DyadicInterval interval;  // HH: final interval; KY: interval of the bits read
};

template <BitSource S>
SampleOutcome ky_sample(const DiscreteDistribution& dist, S& src) {
  if (const auto atom = dist.certain_atom()) return {*atom, 0, {0, 0}, DyadicInterval::unit()};
  const std::uint64_t start = src.consumed();
  DyadicInterval path;
  std::uint64_t offset = 0;
  for (std::uint64_t j = 1;; ++j) {
    const bool b = src.next_bit();
    path = path.refine(b);
    offset = 2 * offset + (b ? 1 : 0);
    const auto& leaves = dist.leaves_at_level(j);
    if (offset < leaves.size()) {
      return {leaves[offset], src.consumed() - start, {j, 0}, path};
    }
    offset -= leaves.size();
  }
}

// ceil(Q * 2^d) for the lower endpoint Q of a cell.
inline mpz_class scaled_ceil(const Real& q, std::uint64_t d) {
  if (q.is_exact()) {
    mpz_class num = q.exact_value()->get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), d);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), q.exact_value()->get_den().get_mpz_t());
    return c;
  }
  return scaled_floor(q, d) + 1;
}

// Rank of the depth-d exit interval [k/2^d, (k+1)/2^d) within cell i. A cell
// has at most two exit leaves per depth: an odd-indexed one at its left edge
// and an even-indexed one at its right edge.
inline std::uint64_t hh_leaf_rank(const DiscreteDistribution& dist, std::uint64_t cell, const DyadicInterval& iv) {
  if (iv.depth() == 0) return 0;
  const mpz_class& k = iv.lo_numerator();
  if (mpz_odd_p(k.get_mpz_t())) return 0;
  const mpz_class k_left = scaled_ceil(dist.cumulative(cell - 1), iv.depth());
  return (mpz_odd_p(k_left.get_mpz_t()) && k_left < k) ? 1 : 0;
}

template <BitSource S>
SampleOutcome hh_sample(const DiscreteDistribution& dist, S& src) {
  const std::uint64_t start = src.consumed();
  DyadicInterval iv;
  std::uint64_t cell = 1;
  for (;;) {
    cell = dist.locate(iv.lower(), cell);
    if (dist.cumulative_reaches(cell, iv.upper())) {
      return {cell, src.consumed() - start, {iv.depth(), hh_leaf_rank(dist, cell, iv)}, iv};
    }
    iv = iv.refine(src.next_bit());
  }
}

enum class Algorithm { ky, hh };

inline const char* to_string(Algorithm a) { return a == Algorithm::ky ? "ky" : "hh"; }

template <BitSource S>
SampleOutcome sample(const DiscreteDistribution& dist, Algorithm algo, S& src) {
  return algo == Algorithm::ky ? ky_sample(dist, src) : hh_sample(dist, src);
}

struct TreeLeaf {
  std::uint64_t symbol = 0;
  ExitLeaf leaf;
};

// Exit leaves of a sampler's tree down to depth cap.
struct TreeEnumeration {
  std::vector<TreeLeaf> leaves;
  std::uint64_t cap = 0;
  Dyadic unresolved_mass;          // probability of running past depth cap
  std::uint64_t unexpanded_atoms = 0;  // KY: atoms with digits beyond cap
};

inline TreeEnumeration enumerate_ky_tree(const DiscreteDistribution& dist, std::uint64_t cap) {
  if (!dist.finite()) throw InvalidInput("tree enumeration needs a finite distribution");
  TreeEnumeration out;
  out.cap = cap;
  if (const auto atom = dist.certain_atom()) {
    out.leaves.push_back({*atom, {0, 0}});
    return out;
  }
  Dyadic resolved;
  for (std::uint64_t j = 1; j <= cap; ++j) {
    const auto& leaves = dist.leaves_at_level(j);
    for (const auto atom : leaves) out.leaves.push_back({atom, {j, 0}});
    resolved = resolved + Dyadic(mpz_class(static_cast<unsigned long>(leaves.size())), j);
  }
  out.unresolved_mass = Dyadic(1) - resolved;
  for (std::uint64_t i = 1; i <= *dist.size(); ++i) {
    const Real& p = dist.probability(i);
    if (p.is_exact()) {
      mpq_class scaled = *p.exact_value();
      mpz_class pow = 1;
      mpz_mul_2exp(pow.get_mpz_t(), pow.get_mpz_t(), cap);
      scaled *= pow;
      scaled.canonicalize();
      if (scaled.get_den() != 1) ++out.unexpanded_atoms;
    } else {
      ++out.unexpanded_atoms;
    }
  }
  return out;
}

inline TreeEnumeration enumerate_hh_tree(const DiscreteDistribution& dist, std::uint64_t cap) {
  if (!dist.finite()) throw InvalidInput("tree enumeration needs a finite distribution");
  TreeEnumeration out;
  out.cap = cap;
  std::vector<DyadicInterval> frontier{DyadicInterval::unit()};
  for (std::uint64_t t = 0; t <= cap && !frontier.empty(); ++t) {
    std::vector<DyadicInterval> next;
    std::uint64_t cell = 1;
    for (const auto& node : frontier) {
      cell = dist.locate(node.lower(), cell);
      if (dist.cumulative_reaches(cell, node.upper())) {
        out.leaves.push_back({cell, {t, hh_leaf_rank(dist, cell, node)}});
      } else if (t < cap) {
        next.push_back(node.refine(false));
        next.push_back(node.refine(true));
      } else {
        out.unresolved_mass = out.unresolved_mass + Dyadic(mpz_class(1), t);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Enclosure of E[T] from the leaves of an enumeration. tail_upper bounds the
// contribution of paths longer than cap.
inline RealEnclosure expected_bits_from_tree(const TreeEnumeration& tree, const Dyadic& tail_upper) {
  Dyadic partial;
  for (const auto& l : tree.leaves) {
    partial = partial + Dyadic(mpz_class(static_cast<unsigned long>(l.leaf.depth)), l.leaf.depth);
  }
  const Dyadic over = tree.unresolved_mass * Dyadic(static_cast<long>(tree.cap + 1));
  return {partial + over, partial + over + tail_upper};
}

// E[T] for ky_sample. Paths past cap contribute at most (cap+2)/2^cap per
// atom whose expansion continues past cap.
inline RealEnclosure ky_expected_bits(const DiscreteDistribution& dist, std::uint64_t depth_cap) {
  const TreeEnumeration tree = enumerate_ky_tree(dist, depth_cap);
  if (tree.unresolved_mass.is_zero()) return expected_bits_from_tree(tree, Dyadic());
  const Dyadic per_atom(mpz_class(static_cast<unsigned long>(depth_cap + 2)), depth_cap);
  // Subtract the (cap+1) * unresolved part already counted in the lower end.
  Dyadic tail = Dyadic(static_cast<long>(tree.unexpanded_atoms)) * per_atom -
                tree.unresolved_mass * Dyadic(static_cast<long>(depth_cap + 1));
  if (tail.sign() < 0) tail = Dyadic();
  return expected_bits_from_tree(tree, tail);
}

// E[T] for hh_sample. At most n-1 intervals straddle a boundary at any
// depth, so P(T > t) <= (n-1) 2^-t.
inline RealEnclosure hh_expected_bits(const DiscreteDistribution& dist, std::uint64_t depth_cap) {
  const TreeEnumeration tree = enumerate_hh_tree(dist, depth_cap);
  if (tree.unresolved_mass.is_zero()) return expected_bits_from_tree(tree, Dyadic());
  const Dyadic tail(mpz_class(static_cast<unsigned long>(*dist.size() - 1)), depth_cap);
  return expected_bits_from_tree(tree, tail);
}

namespace detail {

// Enclosure of -x log2 x for x in iv (clamped to [0, 1]).
inline mp::Interval entropy_term(const mp::Interval& iv) {
  const mpfr_prec_t p = iv.prec();
  auto h = [p](const mp::Float& x, mpfr_rnd_t dir) {
    mp::Float r(p);
    if (x.sign() <= 0) {
      mpfr_set_zero(r.get(), 1);
      return r;
    }
    mp::Float l(p);
    mpfr_log2(l.get(), x.get(), dir == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD);
    mpfr_neg(l.get(), l.get(), MPFR_RNDN);
    mpfr_mul(r.get(), x.get(), l.get(), dir);
    return r;
  };
  mp::Float a = iv.lo;
  mp::Float b = iv.hi;
  if (a.sign() < 0) mpfr_set_zero(a.get(), 1);
  if (mpfr_cmp_si(b.get(), 1) > 0) mpfr_set_si(b.get(), 1, MPFR_RNDN);
  const mp::Interval e_inv = mp::exp(mp::from_si(-1, p));
  mp::Interval r(p);
  if (mpfr_lessequal_p(b.get(), e_inv.lo.get())) {
    r.lo = h(a, MPFR_RNDD);
    r.hi = h(b, MPFR_RNDU);
  } else if (mpfr_greaterequal_p(a.get(), e_inv.hi.get())) {
    r.lo = h(b, MPFR_RNDD);
    r.hi = h(a, MPFR_RNDU);
  } else {
    mp::Float la = h(a, MPFR_RNDD);
    mp::Float lb = h(b, MPFR_RNDD);
    r.lo = cmp(la, lb) < 0 ? la : lb;
    // max of -x log2 x is log2(e)/e
    const mp::Interval peak = mp::div(e_inv, mp::log2_const(p));
    r.hi = peak.hi;
  }
  return r;
}

}  // namespace detail

// Enclosure of sum_i p_i log2(1/p_i) with width <= 2^-precision.
inline RealEnclosure entropy_discrete(const DiscreteDistribution& dist, std::uint64_t precision = 40) {
  std::uint64_t terms = 0;
  Dyadic tail;
  if (dist.finite()) {
    terms = *dist.size();
  } else {
    const auto& bound = dist.tail_entropy_bound();
    if (!bound) throw InvalidInput("entropy of " + dist.name() + " needs a tail bound");
    const Dyadic target = Dyadic::pow2(-static_cast<long>(precision) - 2);
    terms = 1;
    while (bound(terms) > target) terms *= 2;
    tail = bound(terms);
  }
  const Dyadic raw_target = Dyadic::pow2(-static_cast<long>(precision) - 1);
  for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 64; prec <= Real::kMaxPrecision; prec *= 2) {
    mp::Interval total = mp::from_si(0, prec);
    for (std::uint64_t i = 1; i <= terms; ++i) {
      total = mp::add(total, detail::entropy_term(dist.probability(i).interval(prec)));
    }
    RealEnclosure e = to_enclosure(total, precision + 3);
    e.hi = e.hi + tail;
    if (e.width() <= raw_target + tail) return e;
  }
  throw EnclosureBudgetExceeded("entropy of " + dist.name());
}

}  // namespace fairbits
