#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "fairbits/bench.hpp"

using namespace fairbits;
using namespace fairbits::bench;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(FAIRBITS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split_list(line));
  return rows;
}

}  // namespace

TEST(ParseEps, Forms) {
  EXPECT_EQ(parse_eps("1/2^10"), Dyadic::pow2(-10));
  EXPECT_EQ(parse_eps("3/2^4"), Dyadic(mpz_class(3), 4));
  EXPECT_EQ(parse_eps("1/16"), Dyadic::pow2(-4));
  EXPECT_EQ(parse_eps(" 0.25 "), Dyadic::pow2(-2));
  const Dyadic tenth = parse_eps("0.1");
  EXPECT_LE(tenth.to_mpq(), mpq_class(1, 10));
  EXPECT_GT(tenth.to_mpq() + Dyadic::pow2(-64).to_mpq(), mpq_class(1, 10));
}

TEST(ParseEps, Rejects) {
  for (const char* bad : {"", "0", "-1/2^3", "1/3", "abc", "1/2^", "/2^3", "0.0"}) {
    EXPECT_THROW(parse_eps(bad), InvalidInput) << bad;
  }
}

TEST(ParseSeed, Hex) {
  EXPECT_EQ(parse_seed("0x1"), 1U);
  EXPECT_EQ(parse_seed("ff"), 255U);
  EXPECT_EQ(parse_seed("0XFFFFFFFFFFFFFFFF"), ~0ULL);
  EXPECT_THROW(parse_seed("0x"), InvalidInput);
  EXPECT_THROW(parse_seed("12g"), InvalidInput);
  EXPECT_THROW(parse_seed("11112222333344445"), InvalidInput);
}

TEST(Laws, ParseAndMethods) {
  EXPECT_TRUE(parse_law("dyadic:1/4,3/4").discrete);
  EXPECT_EQ(parse_law("normal-pair").dimension, 2U);
  EXPECT_THROW(parse_law("dyadic:1/3,2/3"), InvalidInput);
  EXPECT_THROW(parse_law("cauchy"), UnknownLaw);
  EXPECT_THROW(check_method(parse_law("maxwell"), "partition"), InvalidInput);
  EXPECT_NO_THROW(check_method(parse_law("exponential"), "split-inversion"));
}

TEST(Band, ThreeSigma) {
  EXPECT_TRUE(within_band(10.0, 1.0, 100, 9.0, 9.7));
  EXPECT_FALSE(within_band(10.0, 1.0, 100, 9.0, 9.69));
  EXPECT_TRUE(within_band(5.0, 0.0, 1, 5.0, 5.0));
}

TEST(Bench, UniformCostIsExact) {
  BenchConfig cfg;
  cfg.law = "uniform";
  cfg.trials = 200;
  cfg.threads = 1;
  for (long k = 2; k <= 20; ++k) cfg.eps.push_back(Dyadic::pow2(-k));
  const auto rows = run_bench(cfg);
  ASSERT_EQ(rows.size(), 19U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double k = static_cast<double>(i + 2);
    EXPECT_EQ(rows[i].mean, k - 1);
    EXPECT_EQ(rows[i].stddev, 0);
    EXPECT_NEAR(rows[i].lower, k - 1, 1e-12);
    EXPECT_TRUE(rows[i].pass);
  }
}

TEST(Bench, ThreadCountDoesNotChangeResults) {
  BenchConfig cfg;
  cfg.law = "exponential";
  cfg.eps = {Dyadic::pow2(-8)};
  cfg.trials = 2000;
  cfg.seed = 0xabc;
  cfg.threads = 1;
  const auto one = run_bench(cfg);
  cfg.threads = 3;
  const auto three = run_bench(cfg);
  EXPECT_EQ(to_csv(one), to_csv(three));
}

TEST(Bench, LowerNeverExceedsUpper) {
  for (const auto& [law, methods] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"uniform", {"inversion", "partition"}},
           {"exponential", {"inversion", "partition", "split-inversion", "convolution", "convolution-ky"}},
           {"truncated-exponential", {"inversion", "convolution", "convolution-ky"}},
           {"maxwell", {"inversion"}},
           {"normal-pair", {"inversion"}}}) {
    for (const auto& m : methods) {
      for (const long k : {2L, 8L, 16L}) {
        const auto b = bounds_for(parse_law(law), m, Dyadic::pow2(-k), kInfinityNorm);
        EXPECT_LE(b.lower, b.upper) << law << " " << m << " " << k;
      }
    }
  }
}

TEST(Bench, NormalPairColumns) {
  const auto b = bounds_for(parse_law("normal-pair"), "inversion", Dyadic::pow2(-8), kInfinityNorm);
  EXPECT_NEAR(b.upper, 22.094191, 1e-6);
  EXPECT_NEAR(b.lower, 18.094191, 1e-6);
}

TEST(Bench, CsvAndJsonShape) {
  BenchConfig cfg;
  cfg.law = "dyadic:1/4,3/4";
  cfg.trials = 50;
  const auto rows = run_bench(cfg);
  const std::string text = to_csv(rows);
  const auto csv = csv_rows(text);
  ASSERT_EQ(csv.size(), 2U);
  EXPECT_EQ(csv[0], split_list(kCsvHeader));
  EXPECT_EQ(text.substr(text.find('\n') + 1, 31), "\"dyadic:1/4,3/4\",ky,1,inf,exact");
  const auto j = nlohmann::json::parse(to_json(rows));
  ASSERT_EQ(j.size(), 1U);
  EXPECT_EQ(j[0]["p"].get<std::string>(), "inf");
  EXPECT_EQ(j[0]["trials"].get<int>(), 50);
}

TEST(Cli, SampleUniformExample) {
  const auto r = cli("sample --law uniform --eps 1/16 --trials 1 --seed 0x1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "trial,value,decimal,bits,leaf\n0,7/2^4,0.4375,3,\n");
}

TEST(Cli, SampleFromTape) {
  const auto path = std::filesystem::temp_directory_path() / "fairbits_cli_tape.txt";
  write_tape_file(path, parse_tape("011"));
  const auto r = cli("sample --law uniform --eps 1/16 --trials 1 --tape " + path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[1][3], "3");
}

TEST(Cli, DyadicLawCostsOneBit) {
  const auto r = cli("sample --law dyadic:1/2,1/2 --trials 5");
  EXPECT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6U);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][3], "1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("sample --eps 0").status, 2);
  EXPECT_EQ(cli("bench --law cauchy").status, 2);
  EXPECT_EQ(cli("bench --law maxwell --method partition").status, 2);
  EXPECT_EQ(cli("no-such-command").status, 2);
  EXPECT_EQ(cli("bench --law uniform --eps 1/2^6 --trials 10").status, 0);
}

TEST(Cli, BenchIsDeterministic) {
  const std::string args = "bench --law exponential --eps 1/2^6,1/2^10 --trials 500 --seed 0x5eed";
  const auto a = cli(args);
  const auto b = cli(args + " --threads 1");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), kCsvHeader);
}

TEST(Cli, ExtractTestRates) {
  const auto r = cli("extract-test --model uniform-4 --n 20000");
  EXPECT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_NEAR(std::stod(rows[1][3]), 2.0, 0.01);
  EXPECT_EQ(rows[1][4], "2.000000");
  const auto d = cli("extract-test --model degenerate --n 1000");
  EXPECT_EQ(csv_rows(d.out)[1][2], "0");
}

TEST(Cli, BatchBenchFairCoin) {
  const auto r = cli("batch-bench --law dyadic:1/2,1/2 --n 10,1000");
  EXPECT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3U);
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(rows[i][1], "1.000000");
    EXPECT_EQ(rows[i][5], "true");
  }
}

TEST(Cli, BoundsTable) {
  const auto r = cli("bounds --law uniform,exponential --eps 1/2^4");
  EXPECT_EQ(r.status, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[1][6], "3.000000");
  EXPECT_EQ(rows[2][6], "4.442695");
}
