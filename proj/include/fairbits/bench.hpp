#pragma once

// Benchmark harness: builds a sampler from a law and a method name, runs
// seeded trials in parallel and compares the mean bit cost with the bounds.

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/continuous.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/entropy_bounds.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/extract.hpp"

namespace fairbits::bench {

// Accepts "1/2^k", "a/2^k", "a/b" with b a power of two, or a decimal; the
// result is the largest dyadic with 64 fractional bits not above the input.
inline Dyadic parse_eps(const std::string& text) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidInput("empty accuracy");
  Dyadic eps;
  const auto caret = s.find("/2^");
  if (caret != std::string::npos) {
    const std::string num = s.substr(0, caret);
    const std::string exp = s.substr(caret + 3);
    if (num.empty() || exp.empty() || num.find_first_not_of("0123456789") != std::string::npos ||
        exp.find_first_not_of("0123456789") != std::string::npos || exp.size() > 5) {
      throw InvalidInput("malformed accuracy '" + text + "'");
    }
    eps = Dyadic(mpz_class(num), std::stoull(exp));
  } else if (s.find('/') != std::string::npos) {
    eps = Dyadic::from_mpq(parse_rational(s));
  } else {
    if (s.find_first_not_of("0123456789.eE+-") != std::string::npos) {
      throw InvalidInput("malformed accuracy '" + text + "'");
    }
    mpf_class f(0, 256);
    if (f.set_str(s, 10) != 0) throw InvalidInput("malformed accuracy '" + text + "'");
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), f.get_mpf_t());
    mpz_class scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
    mpz_class floor_num;
    mpz_fdiv_q(floor_num.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    eps = Dyadic(floor_num, 64);
  }
  if (eps.sign() <= 0) throw InvalidInput("accuracy must be positive, got '" + text + "'");
  return eps;
}

// Hexadecimal seed, with or without 0x.
inline std::uint64_t parse_seed(const std::string& text) {
  std::string s = text;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s = s.substr(2);
  if (s.empty() || s.size() > 16 || s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw InvalidInput("seed must be hexadecimal, got '" + text + "'");
  }
  return std::stoull(s, nullptr, 16);
}

inline std::string format_double(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct BenchConfig {
  std::string law = "uniform";
  std::string method;
  std::vector<Dyadic> eps;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  double p = kInfinityNorm;
  unsigned d = 1;
  std::string format = "csv";
  bool timing = false;
  unsigned threads = 0;
};

struct Draw {
  std::vector<Dyadic> values;  // continuous outputs
  std::uint64_t atom = 0;      // discrete outputs
  std::uint64_t bits = 0;
  std::optional<ExitLeaf> leaf;
};

using DrawFn = std::function<Draw(AnyBitSource&)>;

struct Law {
  std::string name;
  bool discrete = false;
  std::optional<DiscreteDistribution> dist;
  unsigned dimension = 1;
};

inline DiscreteDistribution load_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open distribution file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed distribution file " + path + ": " + e.what());
  }
  if (j.contains("builtin")) {
    const std::string b = j.at("builtin").get<std::string>();
    if (b == "geometric-1-over-e") return DiscreteDistribution::geometric_one_over_e();
    throw UnknownLaw("unknown built-in distribution '" + b + "'");
  }
  if (!j.contains("atoms") || !j.at("atoms").is_array()) {
    throw InvalidInput("distribution file needs an \"atoms\" array or a \"builtin\" name");
  }
  std::vector<std::string> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_string()) throw InvalidInput("atoms must be strings such as \"1/3\"");
    atoms.push_back(a.get<std::string>());
  }
  return DiscreteDistribution::from_strings(atoms, path);
}

inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline Law parse_law(const std::string& name) {
  Law law;
  law.name = name;
  if (name == "uniform" || name == "exponential" || name == "truncated-exponential" || name == "maxwell") {
    return law;
  }
  if (name == "normal-pair") {
    law.dimension = 2;
    return law;
  }
  law.discrete = true;
  if (name == "geometric-1-over-e") {
    law.dist = DiscreteDistribution::geometric_one_over_e();
  } else if (name.rfind("dyadic:", 0) == 0) {
    const auto probs = split_list(name.substr(7));
    for (const auto& p : probs) Dyadic::from_mpq(parse_rational(p));
    law.dist = DiscreteDistribution::from_strings(probs, name);
  } else if (name.rfind("discrete:", 0) == 0) {
    law.dist = DiscreteDistribution::from_strings(split_list(name.substr(9)), name);
  } else if (name.rfind("file:", 0) == 0) {
    law.dist = load_distribution_file(name.substr(5));
  } else {
    throw UnknownLaw("unknown law '" + name + "'");
  }
  return law;
}

inline std::string default_method(const Law& law) { return law.discrete ? "ky" : "inversion"; }

inline std::vector<std::string> methods_for(const Law& law) {
  if (law.discrete) return {"ky", "hh"};
  if (law.name == "uniform") return {"inversion", "partition"};
  if (law.name == "exponential") return {"inversion", "partition", "split-inversion", "convolution", "convolution-ky"};
  if (law.name == "truncated-exponential") return {"inversion", "convolution", "convolution-ky"};
  return {"inversion"};
}

inline void check_method(const Law& law, const std::string& method) {
  const auto ms = methods_for(law);
  if (std::find(ms.begin(), ms.end(), method) == ms.end()) {
    std::string list;
    for (const auto& m : ms) list += (list.empty() ? "" : ", ") + m;
    throw InvalidInput("method '" + method + "' does not apply to law '" + law.name + "' (use " + list + ")");
  }
}

inline DrawFn make_draw(const Law& law, const std::string& method, const Dyadic& eps) {
  check_method(law, method);
  if (law.discrete) {
    const DiscreteDistribution dist = *law.dist;
    const Algorithm algo = method == "ky" ? Algorithm::ky : Algorithm::hh;
    return [dist, algo](AnyBitSource& src) {
      const SampleOutcome o = sample(dist, algo, src);
      Draw d;
      d.atom = o.value;
      d.bits = o.bits_used;
      d.leaf = o.leaf;
      return d;
    };
  }
  auto single = [](const EpsilonSample& s) {
    Draw d;
    d.values = {s.y};
    d.bits = s.bits_used;
    return d;
  };
  if (law.name == "normal-pair") {
    return [eps](AnyBitSource& src) {
      const NormalPair np = normal_pair(eps, src);
      Draw d;
      d.values = {np.first, np.second};
      d.bits = np.bits_used;
      return d;
    };
  }
  if (law.name == "maxwell") {
    return [eps](AnyBitSource& src) {
      const MaxwellSample m = maxwell_sample(eps, src);
      Draw d;
      d.values = {m.value};
      d.bits = m.bits_used;
      return d;
    };
  }
  if (method == "partition") {
    const auto sampler = std::make_shared<PartitionSampler>(
        law.name == "uniform" ? CdfOracle::uniform() : CdfOracle::exponential(), eps);
    return [sampler, single](AnyBitSource& src) { return single((*sampler)(src)); };
  }
  if (method == "inversion") {
    const QuantileOracle q = law.name == "uniform"       ? QuantileOracle::uniform()
                             : law.name == "exponential" ? QuantileOracle::exponential()
                                                         : QuantileOracle::truncated_exponential();
    return [q, eps, single](AnyBitSource& src) { return single(invert_eps(q, eps, src)); };
  }
  if (law.name == "truncated-exponential") {
    const FractionMethod fm = method == "convolution" ? FractionMethod::raw : FractionMethod::ky;
    return [eps, fm, single](AnyBitSource& src) { return single(exp_frac_convolution(eps, src, fm)); };
  }
  const ExponentialRoute route = method == "split-inversion" ? ExponentialRoute::inversion
                                 : method == "convolution"   ? ExponentialRoute::convolution
                                                             : ExponentialRoute::convolution_ky;
  return [eps, route](AnyBitSource& src) {
    const ExponentialSample e = exp_sample(eps, src, route);
    Draw d;
    d.values = {e.value};
    d.bits = e.bits_used;
    return d;
  };
}

// Constant of the exponential sampler's total cost above log2(1/eps) when the
// fractional digits are drawn jointly.
inline constexpr double kExponentialJointConstant = 7.360698;
// Constant of the normal pair's total cost above 2 log2(1/eps).
inline constexpr double kNormalPairConstant = 6.094191;

struct Bounds {
  double lower = 0;
  double upper = 0;
};

inline double entropy_value(const std::string& law) { return diff_entropy_catalog(law).to_double(); }

inline Bounds bounds_for(const Law& law, const std::string& method, const Dyadic& eps, double p) {
  if (law.discrete) {
    const RealEnclosure h = entropy_discrete(*law.dist, 40);
    const double hv = h.midpoint().to_double();
    return {hv, hv + (method == "ky" ? 2.0 : 3.0)};
  }
  const double e = eps.to_double();
  const double l = std::log2(1.0 / e);
  if (law.name == "normal-pair") {
    return {lower_bound_bits(entropy_value("normal-pair"), 2, e, p), 2 * l + kNormalPairConstant};
  }
  const double ent = entropy_value(law.name);
  const double lower = lower_bound_bits(ent, 1, e, p);
  if (method == "inversion") return {lower, l + ent + 2};
  if (method == "partition") return {lower, partition_upper_bound(ent, 1, e, p, Algorithm::hh)};
  const double h_geom = entropy_discrete(DiscreteDistribution::geometric_one_over_e(), 40).midpoint().to_double();
  const auto k = static_cast<double>(std::max<std::uint64_t>(1, bits_for(eps)));
  if (law.name == "truncated-exponential") {
    if (method == "convolution") return {lower, 2 * k};
    // Digits are independent, so the joint entropy is the sum of binary entropies.
    double hv = 0;
    for (std::uint64_t j = 1; j <= static_cast<std::uint64_t>(k); ++j) {
      const double pj = ExponentialTables::shared().digit_weight(j).value().to_double();
      hv -= pj * std::log2(pj) + (1 - pj) * std::log2(1 - pj);
    }
    return {lower, hv + 2};
  }
  if (method == "split-inversion") return {lower, h_geom + 3 + l + entropy_value("truncated-exponential") + 2};
  if (method == "convolution") return {lower, h_geom + 3 + 2 * k};
  return {lower, l + kExponentialJointConstant};
}

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;

  double mean() const { return trials ? static_cast<double>(sum) / static_cast<double>(trials) : 0.0; }
  double stddev() const {
    if (trials < 2) return 0.0;
    const long double n = trials;
    const long double s = sum;
    const long double var = (static_cast<long double>(sum_sq) - s * s / n) / (n - 1);
    return var > 0 ? static_cast<double>(std::sqrt(var)) : 0.0;
  }
};

// Runs trial i on SeededSource(split_seed(seed, i)); sums make the result
// independent of thread scheduling.
inline TrialStats run_trials(const DrawFn& draw, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0,
                             const std::function<void(std::uint64_t, const Draw&)>& observe = {}) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, trials)));
  std::vector<TrialStats> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < trials; i += threads) {
        AnyBitSource src{SeededSource(split_seed(seed, i))};
        const Draw d = draw(src);
        partial[w].trials += 1;
        partial[w].sum += d.bits;
        partial[w].sum_sq += static_cast<unsigned __int128>(d.bits) * d.bits;
        if (observe) observe(i, d);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  TrialStats total;
  for (const auto& s : partial) {
    total.trials += s.trials;
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  return total;
}

struct ReportRow {
  std::string law;
  std::string method;
  unsigned d = 1;
  double p = kInfinityNorm;
  std::string eps;
  std::uint64_t trials = 0;
  double mean = 0;
  double stddev = 0;
  double lower = 0;
  double upper = 0;
  bool pass = false;
  double seconds = 0;
};

inline bool within_band(double mean, double stddev, std::uint64_t trials, double lower, double upper) {
  const double slack = trials ? 3.0 * stddev / std::sqrt(static_cast<double>(trials)) : 0.0;
  return lower - slack <= mean && mean <= upper + slack;
}

inline std::vector<ReportRow> run_bench(const BenchConfig& cfg) {
  if (cfg.trials == 0) throw InvalidInput("trials must be at least 1");
  const Law law = parse_law(cfg.law);
  const std::string method = cfg.method.empty() ? default_method(law) : cfg.method;
  check_method(law, method);
  std::vector<Dyadic> eps_list = cfg.eps;
  if (law.discrete) eps_list = {Dyadic()};
  if (eps_list.empty()) throw InvalidInput("at least one accuracy is required");
  std::vector<ReportRow> rows;
  for (const auto& eps : eps_list) {
    const auto t0 = std::chrono::steady_clock::now();
    const DrawFn draw = make_draw(law, method, eps);
    const TrialStats stats = run_trials(draw, cfg.trials, cfg.seed, cfg.threads);
    const Bounds b = bounds_for(law, method, eps, cfg.p);
    ReportRow row;
    row.law = cfg.law;
    row.method = method;
    row.d = law.dimension;
    row.p = cfg.p;
    row.eps = law.discrete ? "exact" : eps.to_string();
    row.trials = stats.trials;
    row.mean = stats.mean();
    row.stddev = stats.stddev();
    row.lower = b.lower;
    row.upper = b.upper;
    row.pass = within_band(row.mean, row.stddev, row.trials, row.lower, row.upper);
    if (cfg.timing) {
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rows.push_back(row);
  }
  return rows;
}

inline const char* kCsvHeader = "law,method,d,p,eps,trials,mean_T,std_T,lower,upper,pass,seconds";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.law) << "," << r.method << "," << r.d << "," << format_double(r.p, 0) << "," << r.eps
        << "," << r.trials << "," << format_double(r.mean) << "," << format_double(r.stddev) << ","
        << format_double(r.lower) << "," << format_double(r.upper) << "," << (r.pass ? "true" : "false") << ","
        << format_double(r.seconds, 3) << "\n";
  }
  return out.str();
}

inline std::string to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["law"] = r.law;
    j["method"] = r.method;
    j["d"] = r.d;
    j["p"] = std::isinf(r.p) ? nlohmann::json("inf") : nlohmann::json(r.p);
    j["eps"] = r.eps;
    j["trials"] = r.trials;
    j["mean_T"] = r.mean;
    j["std_T"] = r.stddev;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["pass"] = r.pass;
    j["seconds"] = r.seconds;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace fairbits::bench
