// awtc-lab: command-line front end over the awtc C API.
//
//   awtc-lab bounds      --rho-w 0.05,0.1,0.2 --rho-r-step 0.01 --out bounds.csv
//   awtc-lab build       --n 12 --rho-w 0.1 --epsilon 0.1 --ell 3 --seed 7 --out code.txt
//   awtc-lab secrecy     --codebook code.txt --read-budget 3 --out secrecy.csv
//   awtc-lab reliability --config exp.cfg --adversary exhaustive --out rel.csv --trials-out rel.jsonl
//   awtc-lab reduce      --config exp.cfg --xi 0.0714 --out reduce.csv
//   awtc-lab conflicts   --config exp.cfg --samples 200 --out conflicts.csv
//
// Exit status: 0 success, 1 i/o or internal failure, 2 configuration error,
// 3 resource cap exceeded.

#include <cstdio>
#include <deque>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "awtc/awtc.h"

namespace {

int exit_code(awtc_status status) {
  switch (status) {
    case AWTC_OK: return 0;
    case AWTC_ERR_RESOURCE: return 3;
    case AWTC_ERR_IO:
    case AWTC_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

struct Failure {
  awtc_status status;
};

void check(awtc_status status) {
  if (status != AWTC_OK) throw Failure{status};
}

// Experiment flags map one-to-one onto config keys. Values stay strings so the
// library does the parsing and validation.
struct ExperimentFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::pair<CLI::Option*, std::string>> options;
  std::deque<std::string> storage;  // stable addresses for CLI11

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    storage.emplace_back();
    options.emplace_back(app->add_option(flag, storage.back(), help), key);
  }

  awtc_config* build() {
    awtc_config* config = nullptr;
    check(awtc_config_new(&config));
    try {
      if (!config_path.empty()) check(awtc_config_load(config, config_path.c_str()));
      for (std::size_t i = 0; i < options.size(); ++i) {
        if (options[i].first->count() > 0)
          check(awtc_config_set(config, options[i].second.c_str(), storage[i].c_str()));
      }
      check(awtc_config_validate(config));
    } catch (...) {
      awtc_config_free(config);
      throw;
    }
    return config;
  }
};

void add_experiment_flags(CLI::App* app, ExperimentFlags& flags) {
  app->add_option("--config", flags.config_path, "key=value config file; explicit flags take precedence");
  flags.add(app, "--n", "n", "block length");
  flags.add(app, "--rho-r", "rho_r", "read fraction");
  flags.add(app, "--rho-w", "rho_w", "write (error) fraction");
  flags.add(app, "--epsilon", "epsilon", "rate slack, R = 1 - h(rho_w) - epsilon");
  flags.add(app, "--ell", "ell", "seed length (log2 of the bin size)");
  flags.add(app, "--trials", "trials", "Monte Carlo trials");
  flags.add(app, "--seed", "seed", "master seed");
  flags.add(app, "--adversary", "adversary", "random|greedy|exhaustive|omniscient");
  flags.add(app, "--max-enum", "max_enum", "cap on candidate errors for the exhaustive adversary");
  flags.add(app, "--xi", "xi", "slack of the random wiretap channel");
  flags.add(app, "--interval", "interval", "normal|clopper-pearson");
  flags.add(app, "--threads", "threads", "worker threads (0 = all cores)");
  flags.add(app, "--samples", "samples", "sampled views / supports");
  flags.add(app, "--codebook", "codebook", "load this codebook instead of sampling one");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--rho-w", "invalid number '" + item + "'");
    out.push_back(value);
  }
  return out;
}

const char* or_null(const std::string& path) { return path.empty() ? nullptr : path.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial wiretap channel lab"};
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "capacity bounds grid as CSV");
  std::string rho_w_list = "0.05,0.1,0.2";
  double rho_r_step = 0.01;
  std::string bounds_out;
  bounds->add_option("--rho-w", rho_w_list, "comma-separated rho_w values");
  bounds->add_option("--rho-r-step", rho_r_step, "rho_r grid step");
  bounds->add_option("--out", bounds_out, "output CSV")->required();

  auto* build = app.add_subcommand("build", "sample a binned codebook and save it");
  ExperimentFlags build_flags;
  std::string build_out;
  add_experiment_flags(build, build_flags);
  build->add_option("--out", build_out, "codebook file")->required();

  auto* secrecy = app.add_subcommand("secrecy", "exact secrecy metrics of a codebook");
  std::string secrecy_codebook, secrecy_mode = "exact", secrecy_out;
  int read_budget = 0;
  std::size_t secrecy_samples = 1000;
  std::uint64_t secrecy_seed = 1;
  secrecy->add_option("--codebook", secrecy_codebook, "codebook file")->required();
  secrecy->add_option("--read-budget", read_budget, "support size floor(rho_r n)")->required();
  secrecy->add_option("--mode", secrecy_mode, "exact|sampled")->check(CLI::IsMember({"exact", "sampled"}));
  secrecy->add_option("--samples", secrecy_samples, "supports drawn in sampled mode");
  secrecy->add_option("--seed", secrecy_seed, "seed for sampled supports");
  secrecy->add_option("--out", secrecy_out, "output CSV")->required();

  auto* reliability = app.add_subcommand("reliability", "decoding error against an adversary");
  ExperimentFlags reliability_flags;
  std::string reliability_out, reliability_trials;
  add_experiment_flags(reliability, reliability_flags);
  reliability->add_option("--out", reliability_out, "metrics CSV");
  reliability->add_option("--trials-out", reliability_trials, "per-trial JSONL");

  auto* reduce = app.add_subcommand("reduce", "random wiretap channel vs adversarial channel");
  ExperimentFlags reduce_flags;
  std::string reduce_out, reduce_trials;
  add_experiment_flags(reduce, reduce_flags);
  reduce->add_option("--out", reduce_out, "metrics CSV");
  reduce->add_option("--trials-out", reduce_trials, "per-trial JSONL of the random-channel arm");

  auto* conflicts = app.add_subcommand("conflicts", "conflict counts of consistent-set blocks");
  ExperimentFlags conflict_flags;
  std::string conflicts_out;
  add_experiment_flags(conflicts, conflict_flags);
  conflicts->add_option("--out", conflicts_out, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  awtc_config* config = nullptr;
  awtc_code* code = nullptr;
  int status = 0;
  try {
    if (*bounds) {
      const auto list = parse_list(rho_w_list);
      std::size_t rows = 0;
      check(awtc_bounds_grid_csv(list.data(), list.size(), rho_r_step, bounds_out.c_str(), &rows));
      std::printf("wrote %zu rows to %s\n", rows, bounds_out.c_str());
    } else if (*build) {
      config = build_flags.build();
      check(awtc_build_code(config, &code));
      check(awtc_code_save(code, build_out.c_str()));
      awtc_code_info info{};
      check(awtc_code_get_info(code, &info));
      std::printf("n=%d words=%zu ell=%d messages=%zu seed=%llu -> %s\n", info.n, info.words, info.ell,
                  info.messages, static_cast<unsigned long long>(info.seed), build_out.c_str());
    } else if (*secrecy) {
      check(awtc_code_load(secrecy_codebook.c_str(), &code));
      awtc_secrecy_summary summary{};
      check(awtc_secrecy_report_csv(code, read_budget, secrecy_mode == "sampled", secrecy_samples, secrecy_seed,
                                    secrecy_out.c_str(), &summary));
      std::printf("delta=%.9g eta=%.9g l_max=%zu counting_bound=%.9g sem_surrogate=%.9g exact=%d\n",
                  summary.delta, summary.eta, summary.l_max, summary.counting_bound, summary.sem_surrogate,
                  summary.exact);
    } else if (*reliability) {
      config = reliability_flags.build();
      awtc_estimate estimate{};
      check(awtc_run_reliability(config, nullptr, or_null(reliability_out), or_null(reliability_trials),
                                 &estimate));
      std::printf("error_rate=%.9g ci95=%.9g trials=%zu failures=%zu\n", estimate.error_rate, estimate.ci95,
                  estimate.trials, estimate.failures);
    } else if (*reduce) {
      config = reduce_flags.build();
      check(awtc_config_set(config, "mode", "random-wtc"));
      awtc_reduction result{};
      check(awtc_run_reduction(config, nullptr, or_null(reduce_out), or_null(reduce_trials), &result));
      std::printf("random_wtc_error=%.9g+-%.9g awtc_error=%.9g+-%.9g eta_bec=%.9g eta_awtc=%.9g\n",
                  result.random_wtc.error_rate, result.random_wtc.ci95, result.awtc.error_rate, result.awtc.ci95,
                  result.eta_bec, result.eta_awtc);
    } else if (*conflicts) {
      config = conflict_flags.build();
      std::size_t total = 0;
      check(awtc_run_conflicts(config, nullptr, or_null(conflicts_out), &total));
      std::printf("total_conflicts=%zu\n", total);
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "awtc-lab: %s: %s\n", awtc_status_name(f.status), awtc_last_error());
    status = exit_code(f.status);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "awtc-lab: %s\n", e.what());
    status = 2;
  }
  awtc_code_free(code);
  awtc_config_free(config);
  return status;
}
