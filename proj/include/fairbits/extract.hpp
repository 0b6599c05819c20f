#pragma once

// Randomness extraction from exit leaves, and batch generation that recycles
// the extracted bits.
//
// Given the symbol X of a sample, the exit leaf Y is distributed according to
// a conditional model. Nesting U^- <= U < U^+ by the conditional CDF of each
// (X, Y) pair yields a uniform U independent of the symbols; the common binary
// prefix of U^- and U^+ is emitted as fresh fair bits.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/real.hpp"

namespace fairbits {

// Exit leaves of one symbol ordered by (depth, rank); leaf y (1-based) has
// conditional probability (cumulative[y] - cumulative[y-1]) / total().
struct SymbolLeaves {
  std::vector<ExitLeaf> leaves;
  std::vector<mpz_class> cumulative;  // cumulative[0] = 0

  const mpz_class& total() const { return cumulative.back(); }
};

class ConditionalModel {
 public:
  ConditionalModel() = default;
  explicit ConditionalModel(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  // Adds a symbol whose leaves have the given depths and ranks.
  void add_symbol(std::uint64_t symbol, std::vector<ExitLeaf> leaves) {
    if (leaves.empty()) throw InvalidInput("symbol without leaves");
    std::sort(leaves.begin(), leaves.end());
    std::uint64_t deepest = 0;
    for (const auto& l : leaves) deepest = std::max(deepest, l.depth);
    SymbolLeaves s;
    s.cumulative.emplace_back(0);
    for (const auto& l : leaves) {
      mpz_class w = 1;
      mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), deepest - l.depth);
      s.cumulative.push_back(s.cumulative.back() + w);
    }
    std::map<ExitLeaf, std::uint64_t> index;
    for (std::size_t i = 0; i < leaves.size(); ++i) index.emplace(leaves[i], i + 1);
    s.leaves = std::move(leaves);
    symbols_[symbol] = std::move(s);
    index_[symbol] = std::move(index);
  }

  const SymbolLeaves& symbol(std::uint64_t x) const {
    const auto it = symbols_.find(x);
    if (it == symbols_.end()) throw InvalidLeaf("symbol " + std::to_string(x) + " not in model " + name_);
    return it->second;
  }

  bool has_symbol(std::uint64_t x) const { return symbols_.count(x) != 0; }
  const std::map<std::uint64_t, SymbolLeaves>& symbols() const { return symbols_; }

  // 1-based position of a leaf within its symbol, if the model holds it.
  std::optional<std::uint64_t> leaf_index(std::uint64_t x, const ExitLeaf& leaf) const {
    const auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    const auto jt = it->second.find(leaf);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
  }

  // F_x(y) as an exact rational.
  mpq_class conditional_cdf(std::uint64_t x, std::uint64_t y) const {
    const SymbolLeaves& s = symbol(x);
    if (y >= s.cumulative.size()) throw InvalidLeaf("leaf index out of range");
    mpq_class q(s.cumulative[y], s.total());
    q.canonicalize();
    return q;
  }

  // One symbol, two leaves of probability 1/2.
  static ConditionalModel fair_coin() {
    ConditionalModel m("fair-coin");
    m.add_symbol(1, {{1, 0}, {1, 1}});
    return m;
  }

  // One symbol, four leaves of probability 1/4.
  static ConditionalModel uniform4() {
    ConditionalModel m("uniform-4");
    m.add_symbol(1, {{2, 0}, {2, 1}, {2, 2}, {2, 3}});
    return m;
  }

  // Two symbols, one leaf each: the leaf carries no information.
  static ConditionalModel degenerate() {
    ConditionalModel m("degenerate");
    m.add_symbol(1, {{1, 0}});
    m.add_symbol(2, {{1, 0}});
    return m;
  }

  static ConditionalModel named(const std::string& name) {
    if (name == "fair-coin") return fair_coin();
    if (name == "uniform-4") return uniform4();
    if (name == "degenerate") return degenerate();
    throw UnknownLaw("unknown model '" + name + "'");
  }

 private:
  std::string name_;
  std::map<std::uint64_t, SymbolLeaves> symbols_;
  std::map<std::uint64_t, std::map<ExitLeaf, std::uint64_t>> index_;
};

// Draws (symbol, leaf index) pairs from a model whose leaves at depth t carry
// mass 2^-t each; the leaves must sum to one.
class ModelSampler {
 public:
  explicit ModelSampler(const ConditionalModel& model) {
    std::vector<mpq_class> probs;
    mpq_class total = 0;
    for (const auto& [x, s] : model.symbols()) {
      for (std::size_t i = 0; i < s.leaves.size(); ++i) {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), s.leaves[i].depth);
        probs.emplace_back(mpz_class(1), den);
        total += probs.back();
        pairs_.emplace_back(x, i + 1);
      }
    }
    if (total != 1) throw InvalidInput("model leaves of " + model.name() + " do not sum to one");
    dist_ = DiscreteDistribution::from_rationals(probs, model.name());
  }

  template <BitSource S>
  std::pair<std::uint64_t, std::uint64_t> operator()(S& src) const {
    return pairs_[ky_sample(*dist_, src).value - 1];
  }

 private:
  std::optional<DiscreteDistribution> dist_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;
};

// Largest probability of running past the depth cap that a model may ignore.
inline const Dyadic& max_unresolved_mass() {
  static const Dyadic m = Dyadic::pow2(-32);
  return m;
}

inline ConditionalModel build_conditional_model(const DiscreteDistribution& dist, Algorithm algo,
                                                std::uint64_t depth_cap = 64) {
  const TreeEnumeration tree =
      algo == Algorithm::ky ? enumerate_ky_tree(dist, depth_cap) : enumerate_hh_tree(dist, depth_cap);
  if (tree.unresolved_mass > max_unresolved_mass()) {
    throw DepthCapTooSmall("depth cap " + std::to_string(depth_cap) + " leaves mass " +
                           tree.unresolved_mass.to_string() + " unresolved");
  }
  std::map<std::uint64_t, std::vector<ExitLeaf>> per_symbol;
  for (const auto& l : tree.leaves) per_symbol[l.symbol].push_back(l.leaf);
  ConditionalModel model(dist.name() + "/" + to_string(algo));
  for (auto& [symbol, leaves] : per_symbol) model.add_symbol(symbol, std::move(leaves));
  return model;
}

// The interval [U^-, U^+) after emitting R bits is
//   [0.b_1...b_R + 2^-R a/d, 0.b_1...b_R + 2^-R b/d),
// stored as the integers a < b <= d.
class ExtractorState {
 public:
  std::uint64_t feeds() const { return feeds_; }
  std::uint64_t emitted() const { return bits_.size(); }
  const std::vector<bool>& bits() const { return bits_; }

  mpq_class lower() const { return absolute(a_); }
  mpq_class upper() const { return absolute(b_); }

  // Bits of the undecided suffix currently held.
  std::size_t state_bits() const { return mpz_sizeinbase(d_.get_mpz_t(), 2); }

  std::vector<bool> feed(std::uint64_t x, std::uint64_t y, const ConditionalModel& model) {
    const SymbolLeaves& s = model.symbol(x);
    if (y == 0 || y >= s.cumulative.size()) {
      throw InvalidLeaf("leaf " + std::to_string(y) + " invalid for symbol " + std::to_string(x));
    }
    const mpz_class& tot = s.total();
    const mpz_class w = b_ - a_;
    const mpz_class base = a_ * tot;
    a_ = base + w * s.cumulative[y - 1];
    b_ = base + w * s.cumulative[y];
    d_ *= tot;
    ++feeds_;
    std::vector<bool> out;
    for (;;) {
      if (2 * b_ < d_) {
        out.push_back(false);
        a_ *= 2;
        b_ *= 2;
      } else if (2 * a_ >= d_ && b_ < d_) {
        out.push_back(true);
        a_ = 2 * a_ - d_;
        b_ = 2 * b_ - d_;
      } else {
        break;
      }
    }
    shed_common_twos();
    bits_.insert(bits_.end(), out.begin(), out.end());
    return out;
  }

 private:
  void shed_common_twos() {
    auto tz = [](const mpz_class& v) -> mp_bitcnt_t {
      return v == 0 ? ~mp_bitcnt_t{0} : mpz_scan1(v.get_mpz_t(), 0);
    };
    const mp_bitcnt_t t = std::min({tz(a_), tz(b_), tz(d_)});
    if (t == 0 || t == ~mp_bitcnt_t{0}) return;
    mpz_tdiv_q_2exp(a_.get_mpz_t(), a_.get_mpz_t(), t);
    mpz_tdiv_q_2exp(b_.get_mpz_t(), b_.get_mpz_t(), t);
    mpz_tdiv_q_2exp(d_.get_mpz_t(), d_.get_mpz_t(), t);
  }

  mpq_class absolute(const mpz_class& v) const {
    mpz_class prefix = 0;
    for (const bool b : bits_) prefix = prefix * 2 + (b ? 1 : 0);
    mpz_class scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits_.size());
    mpq_class q = (mpq_class(prefix) + mpq_class(v, d_)) / mpq_class(scale);
    q.canonicalize();
    return q;
  }

  mpz_class a_ = 0;
  mpz_class b_ = 1;
  mpz_class d_ = 1;
  std::uint64_t feeds_ = 0;
  std::vector<bool> bits_;
};

// Feeds one (symbol, leaf index) pair and returns the newly emitted bits.
inline std::vector<bool> extractor_feed(ExtractorState& state, std::uint64_t x, std::uint64_t y,
                                        const ConditionalModel& model) {
  return state.feed(x, y, model);
}

// Sampler whose exit-leaf randomness is extracted and recycled. Bits emitted
// after sample i are served from the queue starting with sample i + 1.
template <BitSource Fallback>
class BatchEngine {
 public:
  BatchEngine(DiscreteDistribution dist, Algorithm algo, Fallback fresh, std::uint64_t depth_cap = 64)
      : dist_(std::move(dist)),
        algo_(algo),
        model_(build_conditional_model(dist_, algo, depth_cap)),
        source_(std::move(fresh)) {}

  SampleOutcome step() {
    const SampleOutcome o = sample(dist_, algo_, source_);
    ++n_;
    sum_t_ += o.bits_used;
    // A leaf deeper than the model's cap is not fed; the extractor then
    // works conditionally on the cap not being exceeded.
    if (const auto y = model_.leaf_index(o.value, o.leaf)) {
      source_.queue().push_all(state_.feed(o.value, *y, model_));
    } else {
      ++skipped_;
    }
    return o;
  }

  std::vector<std::uint64_t> generate(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(step().value);
    return out;
  }

  std::uint64_t samples() const { return n_; }
  std::uint64_t fresh_bits() const { return source_.fresh_consumed(); }
  std::uint64_t fetched_bits() const { return sum_t_; }
  std::uint64_t recovered_bits() const { return state_.emitted(); }
  std::uint64_t queued_bits() const { return source_.queue().size(); }
  std::uint64_t max_queue_depth() const { return source_.queue().max_depth(); }
  std::uint64_t skipped_feeds() const { return skipped_; }

  // N_n = sum T_j - R_n + Q_n
  bool accounting_holds() const { return fresh_bits() + recovered_bits() == fetched_bits() + queued_bits(); }

  const ConditionalModel& model() const { return model_; }
  const ExtractorState& extractor() const { return state_; }

 private:
  DiscreteDistribution dist_;
  Algorithm algo_;
  ConditionalModel model_;
  FetchBitSource<Fallback> source_;
  ExtractorState state_;
  std::uint64_t n_ = 0;
  std::uint64_t sum_t_ = 0;
  std::uint64_t skipped_ = 0;
};

struct BatchResult {
  std::vector<std::uint64_t> values;
  std::uint64_t fresh_bits = 0;
  std::uint64_t max_queue_depth = 0;
};

template <BitSource Fallback>
BatchResult batch_generate(const DiscreteDistribution& dist, Algorithm algo, std::uint64_t n, Fallback fresh) {
  BatchEngine<Fallback> engine(dist, algo, std::move(fresh));
  BatchResult r;
  r.values = engine.generate(n);
  r.fresh_bits = engine.fresh_bits();
  r.max_queue_depth = engine.max_queue_depth();
  return r;
}

struct RandomnessReport {
  std::uint64_t n = 0;
  double monobit_z = 0;
  double runs_z = 0;
};

inline constexpr std::uint64_t kMinTestBits = 10000;

// Monobit z = (ones - zeros) / sqrt(n); Wald-Wolfowitz runs z-score.
inline RandomnessReport extractor_output_tests(const std::vector<bool>& bits) {
  const std::uint64_t n = bits.size();
  if (n < kMinTestBits) throw TooFewBits("need at least " + std::to_string(kMinTestBits) + " bits, got " +
                                         std::to_string(n));
  std::uint64_t ones = 0;
  std::uint64_t runs = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    ones += bits[i] ? 1 : 0;
    if (i > 0 && bits[i] != bits[i - 1]) ++runs;
  }
  const double dn = static_cast<double>(n);
  const double n1 = static_cast<double>(ones);
  const double n0 = dn - n1;
  RandomnessReport r;
  r.n = n;
  r.monobit_z = (n1 - n0) / std::sqrt(dn);
  const double mu = 2.0 * n1 * n0 / dn + 1.0;
  const double var = (mu - 1.0) * (mu - 2.0) / (dn - 1.0);
  const double observed = static_cast<double>(runs);
  if (var <= 0) {
    r.runs_z = observed == mu ? 0.0 : std::copysign(INFINITY, observed - mu);
  } else {
    r.runs_z = (observed - mu) / std::sqrt(var);
  }
  return r;
}

// Exit-leaf entropy in excess of the symbol entropy, E(Y) - E(X). The exit
// leaf has entropy sum_u d(u) 2^-d(u) = E[T].
inline RealEnclosure exit_leaf_entropy_gap(const DiscreteDistribution& dist, Algorithm algo,
                                           std::uint64_t depth_cap = 64, std::uint64_t precision = 40) {
  const RealEnclosure t = algo == Algorithm::ky ? ky_expected_bits(dist, depth_cap) : hh_expected_bits(dist, depth_cap);
  const RealEnclosure h = entropy_discrete(dist, precision);
  return {t.lo - h.hi, t.hi - h.lo};
}

}  // namespace fairbits
