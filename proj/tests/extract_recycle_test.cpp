#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/extract.hpp"

using namespace fairbits;

namespace {

DiscreteDistribution dist_of(const std::vector<std::string>& atoms) { return DiscreteDistribution::from_strings(atoms); }

std::string as_text(const std::vector<bool>& b) {
  std::string s;
  for (const bool x : b) s.push_back(x ? '1' : '0');
  return s;
}

ExtractorState feed_model(const ConditionalModel& model, std::uint64_t n, std::uint64_t seed) {
  const ModelSampler draw(model);
  SeededSource src(seed);
  ExtractorState state;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto [x, y] = draw(src);
    state.feed(x, y, model);
  }
  return state;
}

}  // namespace

TEST(ConditionalModel, DyadicKnuthYaoLeavesAreDegenerate) {
  const auto m = build_conditional_model(dist_of({"1/2", "1/4", "1/4"}), Algorithm::ky);
  ASSERT_EQ(m.symbols().size(), 3U);
  for (const auto& [x, s] : m.symbols()) {
    EXPECT_EQ(s.leaves.size(), 1U);
    EXPECT_EQ(m.conditional_cdf(x, 1), 1);
  }
}

TEST(ConditionalModel, HanHoshiQuarterThreeQuarters) {
  const auto m = build_conditional_model(dist_of({"1/4", "3/4"}), Algorithm::hh);
  const auto& s2 = m.symbol(2);
  ASSERT_EQ(s2.leaves.size(), 2U);
  EXPECT_EQ(s2.leaves[0].depth, 1U);
  EXPECT_EQ(s2.leaves[1].depth, 2U);
  EXPECT_EQ(m.conditional_cdf(2, 1), mpq_class(2, 3));
  EXPECT_EQ(m.conditional_cdf(2, 2), 1);
}

TEST(ConditionalModel, CapTooSmallIsReported) {
  EXPECT_THROW(build_conditional_model(dist_of({"1/3", "2/3"}), Algorithm::ky, 8), DepthCapTooSmall);
}

TEST(ConditionalModel, LeafMassMatchesProbabilities) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 5);
    std::vector<mpq_class> p;
    unsigned long sum = 0;
    std::vector<unsigned long> w(n);
    for (auto& x : w) sum += (x = 1 + rng() % 20);
    for (const auto x : w) p.emplace_back(x, sum);
    for (auto& q : p) q.canonicalize();
    const auto d = DiscreteDistribution::from_rationals(p);
    for (const Algorithm algo : {Algorithm::ky, Algorithm::hh}) {
      const auto m = build_conditional_model(d, algo);
      for (const auto& [x, s] : m.symbols()) {
        mpq_class mass = 0;
        for (const auto& l : s.leaves) mass += Dyadic(mpz_class(1), l.depth).to_mpq();
        EXPECT_LE(mass, p[x - 1]);
        EXPECT_GE(mass, p[x - 1] - mpq_class(1, 1UL << 31));
      }
    }
  }
}

TEST(Extractor, FairCoinHandTrace) {
  const auto m = ConditionalModel::fair_coin();
  ExtractorState s;
  EXPECT_EQ(as_text(extractor_feed(s, 1, 1, m)), "");
  EXPECT_EQ(s.lower(), 0);
  EXPECT_EQ(s.upper(), mpq_class(1, 2));
  EXPECT_EQ(as_text(extractor_feed(s, 1, 2, m)), "");
  EXPECT_EQ(s.lower(), mpq_class(1, 4));
  EXPECT_EQ(s.upper(), mpq_class(1, 2));
  EXPECT_EQ(as_text(extractor_feed(s, 1, 1, m)), "01");
  EXPECT_EQ(s.lower(), mpq_class(1, 4));
  EXPECT_EQ(s.upper(), mpq_class(3, 8));
  EXPECT_EQ(s.emitted(), 2U);
  EXPECT_EQ(as_text(s.bits()), "01");
}

TEST(Extractor, EmittedBitsArePrefixOfInterval) {
  const auto m = build_conditional_model(dist_of({"1/3", "1/6", "1/2"}), Algorithm::hh);
  SeededSource src(4);
  ExtractorState s;
  mpq_class lo = 0;
  mpq_class hi = 1;
  for (int i = 0; i < 300; ++i) {
    const auto o = hh_sample(DiscreteDistribution::from_strings({"1/3", "1/6", "1/2"}), src);
    const auto y = m.leaf_index(o.value, o.leaf);
    ASSERT_TRUE(y.has_value());
    s.feed(o.value, *y, m);
    EXPECT_GE(s.lower(), lo);
    EXPECT_LE(s.upper(), hi);
    lo = s.lower();
    hi = s.upper();
    // [lo, hi) lies within the dyadic interval named by the emitted bits.
    mpz_class prefix = 0;
    for (const bool b : s.bits()) prefix = 2 * prefix + (b ? 1 : 0);
    mpz_class scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), s.bits().size());
    EXPECT_GE(lo, mpq_class(prefix, scale));
    EXPECT_LE(hi, mpq_class(prefix + 1, scale));
  }
}

TEST(Extractor, DegenerateModelEmitsNothing) {
  const auto s = feed_model(ConditionalModel::degenerate(), 1000, 1);
  EXPECT_EQ(s.emitted(), 0U);
}

TEST(Extractor, InvalidLeafIsRejected) {
  ExtractorState s;
  EXPECT_THROW(s.feed(1, 3, ConditionalModel::fair_coin()), InvalidLeaf);
  EXPECT_THROW(s.feed(1, 0, ConditionalModel::fair_coin()), InvalidLeaf);
  EXPECT_THROW(s.feed(2, 1, ConditionalModel::fair_coin()), InvalidLeaf);
}

TEST(Extractor, RatesMatchLeafEntropy) {
  constexpr std::uint64_t n = 100000;
  const auto coin = feed_model(ConditionalModel::fair_coin(), n, 2);
  EXPECT_NEAR(static_cast<double>(coin.emitted()) / n, 1.0, 0.01);
  const auto four = feed_model(ConditionalModel::uniform4(), n, 3);
  EXPECT_NEAR(static_cast<double>(four.emitted()) / n, 2.0, 0.01);
  const auto r = extractor_output_tests(coin.bits());
  EXPECT_LT(std::fabs(r.monobit_z), 4);
  EXPECT_LT(std::fabs(r.runs_z), 4);
}

TEST(OutputTests, ExtremeInputs) {
  const std::vector<bool> zeros(10000, false);
  auto r = extractor_output_tests(zeros);
  EXPECT_DOUBLE_EQ(std::fabs(r.monobit_z), 100.0);
  std::vector<bool> alt;
  for (int i = 0; i < 10000; ++i) alt.push_back(i % 2 == 1);
  r = extractor_output_tests(alt);
  EXPECT_DOUBLE_EQ(r.monobit_z, 0.0);
  EXPECT_NEAR(r.runs_z, 100.0, 0.05);
  EXPECT_THROW(extractor_output_tests(std::vector<bool>(9999, true)), TooFewBits);
}

TEST(Batch, FairCoinRecyclesNothing) {
  BatchEngine<SeededSource> e(dist_of({"1/2", "1/2"}), Algorithm::ky, SeededSource(1));
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    e.step();
    ASSERT_EQ(e.fresh_bits(), n);
  }
  EXPECT_EQ(e.recovered_bits(), 0U);
}

TEST(Batch, EmptyRun) {
  const auto r = batch_generate(dist_of({"1/4", "3/4"}), Algorithm::hh, 0, SeededSource(1));
  EXPECT_TRUE(r.values.empty());
  EXPECT_EQ(r.fresh_bits, 0U);
}

TEST(Batch, ConvergesToEntropyWithExactAccounting) {
  BatchEngine<SeededSource> e(dist_of({"1/4", "3/4"}), Algorithm::hh, SeededSource(17));
  constexpr std::uint64_t n = 100000;
  std::uint64_t twos = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    twos += e.step().value == 2 ? 1 : 0;
    ASSERT_TRUE(e.accounting_holds()) << i;
  }
  const double rate = static_cast<double>(e.fresh_bits()) / n;
  EXPECT_GE(rate, 0.761);
  EXPECT_LE(rate, 0.861);
  EXPECT_NEAR(static_cast<double>(twos) / n, 0.75, 0.01);
}

std::map<std::vector<std::uint64_t>, mpq_class> batch_law(const DiscreteDistribution& d, Algorithm algo,
                                                          std::uint64_t n) {
  std::map<std::vector<std::uint64_t>, mpq_class> freq;
  for (std::uint64_t t = 0; t < 4096; ++t) {
    std::vector<bool> tape;
    for (int i = 0; i < 12; ++i) tape.push_back(((t >> i) & 1U) != 0);
    freq[batch_generate(d, algo, n, ReplaySource(tape)).values] += mpq_class(1, 4096);
  }
  return freq;
}

TEST(Batch, ExhaustiveTapesGiveIndependentPairsOnSmallLaws) {
  const std::vector<std::vector<std::string>> laws = {
      {"1/4", "3/4"}, {"1/2", "1/4", "1/4"}, {"1/8", "3/8", "1/4", "1/4"}, {"3/8", "5/8"}};
  for (const auto& atoms : laws) {
    const auto d = dist_of(atoms);
    std::vector<mpq_class> p;
    for (const auto& a : atoms) p.push_back(parse_rational(a));
    for (const Algorithm algo : {Algorithm::ky, Algorithm::hh}) {
      for (std::uint64_t n = 1; n <= 2; ++n) {
        mpq_class total = 0;
        for (const auto& [values, f] : batch_law(d, algo, n)) {
          mpq_class expect = 1;
          for (const auto v : values) expect *= p[v - 1];
          EXPECT_EQ(f, expect) << to_string(algo) << " n=" << n;
          total += f;
        }
        EXPECT_EQ(total, 1);
      }
    }
  }
}

TEST(Batch, DegenerateModelsStayExactForThreeDraws) {
  const auto d = dist_of({"1/2", "1/4", "1/4"});
  const std::vector<mpq_class> p = {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 4)};
  for (const Algorithm algo : {Algorithm::ky, Algorithm::hh}) {
    for (const auto& [values, f] : batch_law(d, algo, 3)) {
      EXPECT_EQ(f, p[values[0] - 1] * p[values[1] - 1] * p[values[2] - 1]);
    }
  }
}

TEST(Batch, JointLawMatchesReferenceWalk) {
  // Frozen from an independent exact-rational simulation of the same procedure.
  using Law = std::map<std::vector<std::uint64_t>, mpq_class>;
  const Law quarter = {{{1, 1, 1}, mpq_class(1, 64)},  {{1, 1, 2}, mpq_class(3, 64)},
                       {{1, 2, 1}, mpq_class(3, 64)},  {{1, 2, 2}, mpq_class(9, 64)},
                       {{2, 1, 1}, mpq_class(3, 64)},  {{2, 1, 2}, mpq_class(9, 64)},
                       {{2, 2, 1}, mpq_class(11, 64)}, {{2, 2, 2}, mpq_class(25, 64)}};
  const Law eighths = {{{1, 1, 1}, mpq_class(33, 512)}, {{1, 1, 2}, mpq_class(39, 512)},
                       {{1, 2, 1}, mpq_class(27, 512)}, {{1, 2, 2}, mpq_class(93, 512)},
                       {{2, 1, 1}, mpq_class(27, 512)}, {{2, 1, 2}, mpq_class(93, 512)},
                       {{2, 2, 1}, mpq_class(51, 512)}, {{2, 2, 2}, mpq_class(149, 512)}};
  EXPECT_EQ(batch_law(dist_of({"1/4", "3/4"}), Algorithm::hh, 3), quarter);
  EXPECT_EQ(batch_law(dist_of({"3/8", "5/8"}), Algorithm::hh, 3), eighths);
  const Law skewed = {{{1, 1}, mpq_class(47, 64)}, {{1, 2}, mpq_class(9, 64)},
                      {{2, 1}, mpq_class(7, 64)},  {{2, 2}, mpq_class(1, 64)}};
  EXPECT_EQ(batch_law(dist_of({"7/8", "1/8"}), Algorithm::hh, 2), skewed);
}

TEST(Extractor, FirstBitIndependentOfFirstSymbol) {
  const auto d = dist_of({"1/8", "3/8", "1/2"});
  const auto m = build_conditional_model(d, Algorithm::hh);
  const ModelSampler draw(m);
  constexpr std::uint64_t runs = 100000;
  std::map<std::pair<std::uint64_t, bool>, std::uint64_t> joint;
  for (std::uint64_t r = 0; r < runs; ++r) {
    SeededSource src(split_seed(31, r));
    ExtractorState s;
    const auto first = draw(src);
    s.feed(first.first, first.second, m);
    while (s.emitted() == 0) {
      const auto [x, y] = draw(src);
      s.feed(x, y, m);
    }
    ++joint[{first.first, s.bits()[0]}];
  }
  const std::vector<double> p = {0.125, 0.375, 0.5};
  for (std::uint64_t x = 1; x <= 3; ++x) {
    for (const bool b : {false, true}) {
      const double q = p[x - 1] * 0.5;
      const double sigma = std::sqrt(q * (1 - q) / runs);
      EXPECT_NEAR(static_cast<double>(joint[{x, b}]) / runs, q, 3 * sigma) << x << b;
    }
  }
}

TEST(Batch, ExitLeafEntropyGap) {
  const auto g = exit_leaf_entropy_gap(dist_of({"1/4", "3/4"}), Algorithm::hh);
  EXPECT_NEAR(g.midpoint().to_double(), 1.5 - 0.8112781244591328, 1e-10);
  EXPECT_LE(g.hi.to_double(), 3.0);
}
