#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fairbits/entropy_bounds.hpp"
#include "fairbits/errors.hpp"

using namespace fairbits;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reference values from mpmath quadrature and direct cell sums at 30 digits.
const std::vector<std::pair<std::string, double>> kCatalog = {
    {"uniform", 0.0},
    {"exponential", 1.442695040888963407},
    {"normal", 2.047095585180641103},
    {"normal-pair", 4.094191170361282205},
    {"maxwell", 1.359068129527396983},
    {"truncated-exponential", -0.05864822565327109395},
};

struct CellCase {
  const char* law;
  long k;
  double value;
};

const std::vector<CellCase> kCells = {
    {"normal", 4, 6.047330360616543672},        {"normal", 8, 10.04709650242086254},
    {"maxwell", 4, 5.360270690501417514},       {"maxwell", 8, 9.359075371183713614},
    {"exponential", 4, 5.442929831606290761},   {"exponential", 8, 9.442695958129418110},
    {"truncated-exponential", 4, 3.941586565064056260},
    {"truncated-exponential", 8, 7.941352691587183608},
};

double lo_of(const RealEnclosure& e) { return e.lo.to_double(); }
double hi_of(const RealEnclosure& e) { return e.hi.to_double(); }

}  // namespace

TEST(Volume, KnownBalls) {
  for (const double p : {1.0, 2.0, 3.5, kInfinityNorm}) EXPECT_NEAR(unit_ball_volume(1, p), 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(2, 2), kPi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3, 2), 4 * kPi / 3, 1e-13);
  EXPECT_NEAR(unit_ball_volume(2, 1), 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3, 1), 4.0 / 3, 1e-14);
  EXPECT_EQ(unit_ball_volume(2, kInfinityNorm), 4.0);
  EXPECT_EQ(unit_ball_volume(5, kInfinityNorm), 32.0);
}

TEST(Volume, ApproachesCubeAsNormGrows) {
  double prev = 0;
  for (const double p : {1.0, 2.0, 4.0, 8.0, 64.0, 1024.0}) {
    const double v = unit_ball_volume(3, p);
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 8.0);
    prev = v;
  }
  EXPECT_NEAR(prev, 8.0, 0.05);
}

TEST(Volume, RejectsBadArguments) {
  EXPECT_THROW(unit_ball_volume(0, 2), InvalidInput);
  EXPECT_THROW(unit_ball_volume(2, 0.5), InvalidInput);
  EXPECT_THROW(unit_ball_volume(2, std::nan("")), InvalidInput);
}

TEST(LowerBound, Examples) {
  for (int k = 1; k <= 20; ++k) {
    EXPECT_NEAR(lower_bound_bits(0, 1, std::ldexp(1.0, -k), 2), k - 1, 1e-12);
  }
  const double l = 8;
  EXPECT_NEAR(lower_bound_bits(4.094191170361282205, 2, std::ldexp(1.0, -8), 2),
              2 * l + 4.094191170361282205 - std::log2(kPi), 1e-12);
  EXPECT_NEAR(lower_bound_bits(4.094191170361282205, 2, std::ldexp(1.0, -8), kInfinityNorm), 2 * l + 2.094191,
              1e-6);
  EXPECT_NEAR(lower_bound_bits(1.442695040888963407, 1, std::ldexp(1.0, -12), 2), 12 + 1.442695040888963407 - 1,
              1e-12);
  EXPECT_THROW(lower_bound_bits(0, 1, 0, 2), InvalidInput);
}

TEST(PartitionUpper, Examples) {
  const double e = 1.25;
  EXPECT_NEAR(partition_upper_bound(e, 1, std::ldexp(1.0, -10), 2, Algorithm::ky), e + 10 + 1, 1e-12);
  EXPECT_NEAR(partition_upper_bound(e, 1, std::ldexp(1.0, -10), 2, Algorithm::hh), e + 10 + 2, 1e-12);
  EXPECT_NEAR(partition_upper_bound(e, 2, std::ldexp(1.0, -6), kInfinityNorm, Algorithm::ky), e + 12, 1e-12);
  EXPECT_NEAR(partition_upper_bound(e, 2, std::ldexp(1.0, -6), 2, Algorithm::ky), e + 13, 1e-12);
  EXPECT_THROW(partition_upper_bound(e, 1, -1, 2, Algorithm::ky), InvalidInput);
}

TEST(PartitionUpper, GapIsFreeOfEntropyAndAccuracy) {
  for (const double p : {1.0, 2.0, kInfinityNorm}) EXPECT_NEAR(d_gap(1, p), 2.0, 1e-12);
  EXPECT_NEAR(d_gap(2, 2), 1 + std::log2(kPi), 1e-12);
  EXPECT_NEAR(d_gap(2, kInfinityNorm), 2.0, 1e-12);
  for (const unsigned d : {1U, 2U, 3U}) {
    for (const double p : {1.0, 2.0, 5.0, kInfinityNorm}) {
      for (const double eps : {0.5, 1e-3}) {
        for (const double e : {-2.0, 0.0, 3.7}) {
          const double gap = partition_upper_bound(e, d, eps, p, Algorithm::ky) - lower_bound_bits(e, d, eps, p);
          EXPECT_NEAR(gap, d_gap(d, p), 1e-9);
          EXPECT_GT(gap, 0);
        }
      }
    }
  }
}

TEST(Catalog, MatchesQuadrature) {
  for (const auto& [name, value] : kCatalog) {
    const auto enc = diff_entropy_catalog(name).enclose(40);
    EXPECT_LE(lo_of(enc), value + 1e-12) << name;
    EXPECT_GE(hi_of(enc), value - 1e-12) << name;
    EXPECT_NEAR(diff_entropy_catalog(name).to_double(), value, 1e-6) << name;
  }
}

TEST(Catalog, UnknownLaw) { EXPECT_THROW(diff_entropy_catalog("cauchy"), UnknownLaw); }

TEST(Catalog, NormalPairIsTwiceNormal) {
  EXPECT_NEAR(diff_entropy_catalog("normal-pair").to_double(), 2 * diff_entropy_catalog("normal").to_double(),
              1e-12);
}

TEST(ScaleEntropy, AddsLogScale) {
  EXPECT_DOUBLE_EQ(scale_entropy(1.5, 1), 1.5);
  EXPECT_DOUBLE_EQ(scale_entropy(1.5, 8), 4.5);
  EXPECT_DOUBLE_EQ(scale_entropy(0, 0.25), -2);
  EXPECT_THROW(scale_entropy(0, 0), InvalidInput);
  EXPECT_THROW(scale_entropy(0, -1), InvalidInput);
}

TEST(PartitionEntropy, UniformCells) {
  auto e = cell_partition_entropy("uniform", Dyadic::pow2(-1));
  EXPECT_EQ(e.lo, Dyadic(1));
  EXPECT_EQ(e.hi, Dyadic(1));
  for (long k = 2; k <= 12; k += 5) {
    e = cell_partition_entropy("uniform", Dyadic::pow2(-k));
    EXPECT_NEAR(lo_of(e), static_cast<double>(k), 1e-12);
    EXPECT_NEAR(hi_of(e), static_cast<double>(k), 1e-12);
  }
}

TEST(PartitionEntropy, MatchesReferenceSums) {
  for (const auto& c : kCells) {
    const auto e = cell_partition_entropy(c.law, Dyadic::pow2(-c.k));
    ASSERT_TRUE(e.finite()) << c.law;
    EXPECT_LE(lo_of(e), c.value + 1e-12) << c.law << " " << c.k;
    EXPECT_GE(hi_of(e), c.value - 1e-12) << c.law << " " << c.k;
    EXPECT_LT(hi_of(e) - lo_of(e), 1e-9) << c.law << " " << c.k;
  }
}

TEST(PartitionEntropy, ExceedsEntropyPlusResolution) {
  for (const char* law : {"normal", "maxwell", "exponential", "truncated-exponential", "uniform"}) {
    const double ent = diff_entropy_catalog(law).to_double();
    for (long k = 2; k <= 10; k += 2) {
      const auto e = cell_partition_entropy(law, Dyadic::pow2(-k));
      EXPECT_GE(hi_of(e) - k, ent - 1e-12) << law << " " << k;
    }
  }
}

TEST(PartitionEntropy, ExponentialGapShrinks) {
  const double log2e = 1.442695040888963407;
  double prev = 1e9;
  for (long k = 4; k <= 12; ++k) {
    const auto e = cell_partition_entropy("exponential", Dyadic::pow2(-k));
    const double gap = e.midpoint().to_double() - k - log2e;
    EXPECT_GT(gap, 0);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(PartitionEntropy, Errors) {
  EXPECT_THROW(cell_partition_entropy("normal", Dyadic()), InvalidInput);
  EXPECT_THROW(cell_partition_entropy("cauchy", Dyadic::pow2(-3)), UnknownLaw);
}

TEST(PartitionEntropy, ExplicitCellsWithTail) {
  std::vector<mp::Interval> cells = {mp::point(Dyadic::pow2(-1), 64), mp::point(Dyadic::pow2(-2), 64)};
  const auto e = partition_entropy(cells, Dyadic::pow2(-3));
  EXPECT_NEAR(lo_of(e), 1.0, 1e-15);
  EXPECT_NEAR(hi_of(e), 1.125, 1e-15);
}
