#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairbits/bench.hpp"
#include "fairbits/fairbits.hpp"

namespace {

using namespace fairbits;
using namespace fairbits::bench;

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string law = "uniform";
  std::string method;
  std::vector<std::string> eps = {"1/2^10"};
  std::uint64_t trials = 1000;
  std::string seed = "0x1";
  std::string p = "inf";
  unsigned d = 1;
  std::string format = "csv";
  std::string tape;
  std::string out;
  std::string model = "fair-coin";
  std::vector<std::string> n_grid;
  std::uint64_t n = 100000;
  bool timing = false;
  unsigned threads = 0;
};

double parse_norm(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinityNorm;
  double p = 0;
  try {
    std::size_t used = 0;
    p = std::stod(s, &used);
    if (used != s.size()) throw InvalidInput("");
  } catch (...) {
    throw InvalidInput("norm must be a number >= 1 or 'inf', got '" + s + "'");
  }
  if (!(p >= 1)) throw InvalidInput("norm must be at least 1");
  return p;
}

std::vector<Dyadic> parse_eps_list(const std::vector<std::string>& items) {
  std::vector<Dyadic> out;
  for (const auto& item : items) {
    for (const auto& part : split_list(item)) out.push_back(parse_eps(part));
  }
  return out;
}

std::vector<std::uint64_t> parse_n_grid(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> out;
  for (const auto& item : items) {
    for (const auto& part : split_list(item)) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidInput("sample count must be a non-negative integer, got '" + part + "'");
      }
      out.push_back(std::stoull(part));
    }
  }
  return out;
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") throw InvalidInput("format must be csv or json");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InvalidInput("cannot write " + o.out);
  f << text;
}

std::string leaf_text(const std::optional<ExitLeaf>& leaf) {
  if (!leaf) return "";
  return std::to_string(leaf->depth) + ":" + std::to_string(leaf->rank);
}

int cmd_sample(const Options& o) {
  check_format(o.format);
  const Law law = parse_law(o.law);
  const std::string method = o.method.empty() ? default_method(law) : o.method;
  const auto eps_list = parse_eps_list(o.eps);
  if (!law.discrete && eps_list.size() != 1) throw InvalidInput("sample takes exactly one accuracy");
  const DrawFn draw = make_draw(law, method, law.discrete ? Dyadic() : eps_list.front());
  const std::uint64_t seed = parse_seed(o.seed);

  std::optional<AnyBitSource> replay;
  if (!o.tape.empty()) replay.emplace(ReplaySource(read_tape_file(o.tape)));

  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream csv;
  csv << "trial,value,decimal,bits,leaf\n";
  for (std::uint64_t i = 0; i < o.trials; ++i) {
    Draw d;
    if (replay) {
      d = draw(*replay);
    } else {
      AnyBitSource src{SeededSource(split_seed(seed, i))};
      d = draw(src);
    }
    std::vector<std::string> exact;
    std::vector<std::string> decimal;
    if (law.discrete) {
      exact.push_back(std::to_string(d.atom));
      decimal.push_back(std::to_string(d.atom));
    } else {
      for (const auto& v : d.values) {
        exact.push_back(v.to_string());
        decimal.push_back(v.to_decimal());
      }
    }
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
      return s;
    };
    csv << i << "," << join(exact) << "," << join(decimal) << "," << d.bits << "," << leaf_text(d.leaf) << "\n";
    nlohmann::json j;
    j["trial"] = i;
    j["value"] = law.discrete ? nlohmann::json(d.atom) : nlohmann::json(exact);
    j["decimal"] = decimal;
    j["bits"] = d.bits;
    if (d.leaf) j["leaf"] = {{"depth", d.leaf->depth}, {"rank", d.leaf->rank}};
    arr.push_back(j);
  }
  emit(o, o.format == "csv" ? csv.str() : arr.dump(2) + "\n");
  return kExitOk;
}

int cmd_bench(const Options& o) {
  check_format(o.format);
  BenchConfig cfg;
  cfg.law = o.law;
  cfg.method = o.method;
  cfg.eps = parse_eps_list(o.eps);
  cfg.trials = o.trials;
  cfg.seed = parse_seed(o.seed);
  cfg.p = parse_norm(o.p);
  cfg.d = o.d;
  cfg.timing = o.timing;
  cfg.threads = o.threads;
  const auto rows = run_bench(cfg);
  emit(o, o.format == "csv" ? to_csv(rows) : to_json(rows));
  for (const auto& r : rows) {
    if (!r.pass) return kExitBoundFailure;
  }
  return kExitOk;
}

int cmd_extract_test(const Options& o) {
  check_format(o.format);
  ConditionalModel model;
  std::optional<DiscreteDistribution> dist;
  Algorithm algo = Algorithm::ky;
  if (o.model.rfind("law:", 0) == 0) {
    const Law law = parse_law(o.model.substr(4));
    if (!law.discrete) throw InvalidInput("extraction needs a discrete law");
    const std::string method = o.method.empty() ? default_method(law) : o.method;
    check_method(law, method);
    algo = method == "ky" ? Algorithm::ky : Algorithm::hh;
    dist = law.dist;
    model = build_conditional_model(*dist, algo);
  } else {
    model = ConditionalModel::named(o.model);
  }

  SeededSource src(parse_seed(o.seed));
  ExtractorState state;
  std::uint64_t skipped = 0;
  if (dist) {
    for (std::uint64_t i = 0; i < o.n; ++i) {
      const SampleOutcome s = sample(*dist, algo, src);
      if (const auto y = model.leaf_index(s.value, s.leaf)) {
        state.feed(s.value, *y, model);
      } else {
        ++skipped;
      }
    }
  } else {
    const ModelSampler draw(model);
    for (std::uint64_t i = 0; i < o.n; ++i) {
      const auto [x, y] = draw(src);
      state.feed(x, y, model);
    }
  }

  // Target rate: conditional entropy of the leaf given the symbol.
  double target = 0;
  for (const auto& [x, s] : model.symbols()) {
    const double tot = s.total().get_d();
    double px = 0;
    double hx = 0;
    for (std::size_t y = 1; y < s.cumulative.size(); ++y) {
      const double w = mpz_class(s.cumulative[y] - s.cumulative[y - 1]).get_d();
      px += std::ldexp(1.0, -static_cast<int>(s.leaves[y - 1].depth));
      hx += (w / tot) * std::log2(tot / w);
    }
    target += px * hx;
  }

  const double rn = static_cast<double>(state.emitted());
  const double rate = o.n ? rn / static_cast<double>(o.n) : 0.0;
  std::optional<RandomnessReport> tests;
  if (state.emitted() >= kMinTestBits) tests = extractor_output_tests(state.bits());

  if (o.format == "csv") {
    std::ostringstream out;
    out << "model,n,R_n,rate,target,monobit_z,runs_z,skipped\n";
    out << csv_field(model.name()) << "," << o.n << "," << state.emitted() << "," << format_double(rate) << ","
        << format_double(target) << "," << (tests ? format_double(tests->monobit_z) : "") << ","
        << (tests ? format_double(tests->runs_z) : "") << "," << skipped << "\n";
    emit(o, out.str());
  } else {
    nlohmann::json j;
    j["model"] = model.name();
    j["n"] = o.n;
    j["R_n"] = state.emitted();
    j["rate"] = rate;
    j["target"] = target;
    j["monobit_z"] = tests ? nlohmann::json(tests->monobit_z) : nlohmann::json(nullptr);
    j["runs_z"] = tests ? nlohmann::json(tests->runs_z) : nlohmann::json(nullptr);
    j["skipped"] = skipped;
    emit(o, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_batch_bench(const Options& o) {
  check_format(o.format);
  const Law law = parse_law(o.law);
  if (!law.discrete) throw InvalidInput("batch generation needs a discrete law");
  const std::string method = o.method.empty() ? default_method(law) : o.method;
  check_method(law, method);
  const Algorithm algo = method == "ky" ? Algorithm::ky : Algorithm::hh;
  auto grid = parse_n_grid(o.n_grid);
  std::sort(grid.begin(), grid.end());
  const double h = entropy_discrete(*law.dist, 40).midpoint().to_double();

  BatchEngine<SeededSource> engine(*law.dist, algo, SeededSource(parse_seed(o.seed)));
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream csv;
  csv << "n,fresh_per_sample,entropy,gap,max_queue_depth,accounting\n";
  for (const std::uint64_t n : grid) {
    bool accounting = true;
    while (engine.samples() < n) {
      engine.step();
      accounting = accounting && engine.accounting_holds();
    }
    const double per = n ? static_cast<double>(engine.fresh_bits()) / static_cast<double>(n) : 0.0;
    const double gap = std::abs(per - h);
    csv << n << "," << format_double(per) << "," << format_double(h) << "," << format_double(gap) << ","
        << engine.max_queue_depth() << "," << (accounting ? "true" : "false") << "\n";
    arr.push_back({{"n", n},
                   {"fresh_per_sample", per},
                   {"entropy", h},
                   {"gap", gap},
                   {"max_queue_depth", engine.max_queue_depth()},
                   {"accounting", accounting}});
  }
  emit(o, o.format == "csv" ? csv.str() : arr.dump(2) + "\n");
  return kExitOk;
}

int cmd_bounds(const Options& o) {
  check_format(o.format);
  const double p = parse_norm(o.p);
  const auto eps_list = parse_eps_list(o.eps);
  std::vector<std::string> laws;
  if (o.law == "all") {
    laws = {"uniform", "exponential", "truncated-exponential", "maxwell", "normal-pair"};
  } else {
    laws = split_list(o.law);
  }
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream csv;
  csv << "law,d,p,eps,entropy,volume,lower,partition_upper_ky,partition_upper_hh\n";
  for (const auto& name : laws) {
    const unsigned d = name == "normal-pair" ? 2 : o.d;
    const double ent = diff_entropy_catalog(name).to_double();
    for (const auto& eps : eps_list) {
      const double e = eps.to_double();
      const double vol = unit_ball_volume(d, p);
      const double lo = lower_bound_bits(ent, d, e, p);
      const double ky = partition_upper_bound(ent, d, e, p, Algorithm::ky);
      const double hh = partition_upper_bound(ent, d, e, p, Algorithm::hh);
      csv << name << "," << d << "," << format_double(p, 0) << "," << eps.to_string() << "," << format_double(ent)
          << "," << format_double(vol) << "," << format_double(lo) << "," << format_double(ky) << ","
          << format_double(hh) << "\n";
      arr.push_back({{"law", name},
                     {"d", d},
                     {"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)},
                     {"eps", eps.to_string()},
                     {"entropy", ent},
                     {"volume", vol},
                     {"lower", lo},
                     {"partition_upper_ky", ky},
                     {"partition_upper_hh", hh}});
    }
  }
  emit(o, o.format == "csv" ? csv.str() : arr.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random variate generation from fair coin flips with bit accounting"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed in hexadecimal")->capture_default_str();
    sub->add_option("--format", o.format, "csv or json")->capture_default_str();
    sub->add_option("--out", o.out, "write output to this file");
  };
  auto add_law = [&](CLI::App* sub) {
    sub->add_option("--law", o.law, "law name, dyadic:p1,p2,.. , discrete:p1,p2,.. or file:PATH")
        ->capture_default_str();
    sub->add_option("--method", o.method, "sampling method");
  };
  auto add_eps = [&](CLI::App* sub) {
    sub->add_option("--eps", o.eps, "accuracy: 1/2^k, a/2^k or decimal; repeatable or comma separated")
        ->capture_default_str();
  };

  auto* sample = app.add_subcommand("sample", "print samples with their bit counts");
  add_law(sample);
  add_eps(sample);
  add_common(sample);
  sample->add_option("--trials", o.trials, "number of samples")->capture_default_str();
  sample->add_option("--tape", o.tape, "replay bits from a tape file instead of the seed");

  auto* bench = app.add_subcommand("bench", "compare mean bit cost with the theoretical bounds");
  add_law(bench);
  add_eps(bench);
  add_common(bench);
  bench->add_option("--trials", o.trials, "trials per accuracy")->capture_default_str();
  bench->add_option("--p", o.p, "norm of the accuracy ball")->capture_default_str();
  bench->add_option("--d", o.d, "dimension")->capture_default_str();
  bench->add_flag("--timing", o.timing, "record wall time per row");
  bench->add_option("--threads", o.threads, "worker threads, 0 for all cores")->capture_default_str();

  auto* extract = app.add_subcommand("extract-test", "extract fair bits from exit leaves and test them");
  extract->add_option("--model", o.model, "fair-coin, uniform-4, degenerate or law:LAW")->capture_default_str();
  extract->add_option("--method", o.method, "ky or hh for law: models");
  extract->add_option("--n", o.n, "number of samples fed")->capture_default_str();
  add_common(extract);

  auto* batch = app.add_subcommand("batch-bench", "fresh bits per sample with recycling");
  add_law(batch);
  batch->add_option("--n", o.n_grid, "sample counts; repeatable or comma separated");
  add_common(batch);

  auto* bounds = app.add_subcommand("bounds", "print lower and upper bound tables");
  bounds->add_option("--law", o.law, "catalog law, comma list, or all")->capture_default_str();
  add_eps(bounds);
  bounds->add_option("--p", o.p, "norm of the accuracy ball")->capture_default_str();
  bounds->add_option("--d", o.d, "dimension")->capture_default_str();
  bounds->add_option("--format", o.format, "csv or json")->capture_default_str();
  bounds->add_option("--out", o.out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(o);
    if (*bench) return cmd_bench(o);
    if (*extract) return cmd_extract_test(o);
    if (*batch) return cmd_batch_bench(o);
    if (*bounds) return cmd_bounds(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
