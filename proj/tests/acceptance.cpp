// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails, unless it was named with --known-failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "awtc/bounds.hpp"
#include "awtc/channel.hpp"
#include "awtc/harness.hpp"
#include "awtc/parallel.hpp"
#include "oracles.hpp"

using namespace awtc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

// ---- 1 ---------------------------------------------------------------------

Outcome bounds_reproduction() {
  // The time limit applies to the bounds computation; the 1e-6 grid oracle
  // is timed separately.
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> rho_w{0.05, 0.1, 0.2};
  const auto rows = bounds_grid(rho_w, 0.01);
  Rng rng(20240601);
  std::vector<ChannelParams> pairs(100);
  for (auto& p : pairs) p = {uniform_unit(rng), 0.5 * uniform_unit(rng)};
  std::vector<double> found(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) found[i] = minimize_f(pairs[i]).f_min;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t bad = 0;
  for (const BoundsRow& row : rows) {
    const ChannelParams params{row.rho_r, row.rho_w};
    const BoundsResult& b = row.bounds;
    bool ok = std::abs(f_objective(0.0, params)) <= 1e-12 && std::abs(f_objective(1.0, params)) <= 1e-12;
    ok = ok && b.f_min <= 0.0 && b.lower <= b.upper;
    // lower vanishes exactly at and beyond 1 - h(rho_w)
    const bool beyond = row.rho_r >= 1.0 - oracle::h2(row.rho_w);
    ok = ok && (beyond ? b.lower == 0.0 : b.lower > 0.0);
    // zero-capacity threshold in exact integer form: rho_r = k/100, rho_w = a/100
    const long k = std::lround(row.rho_r * 100), a = std::lround(row.rho_w * 100);
    ok = ok && b.zero_capacity == (100 * k > 10000 - 4 * a * (100 - a));
    bad += ok ? 0 : 1;
  }

  std::vector<double> gap(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    gap[i] = std::abs(found[i] - oracle::grid_min_f(pairs[i].rho_r, pairs[i].rho_w, 1e-6).f);
  });
  const double worst = *std::max_element(gap.begin(), gap.end());
  return {bad == 0 && worst <= 1e-6 && seconds < 10.0,
          fmt("%zu cells, %zu violations; max |f_min - grid| = %.2e over 100 pairs; bounds computed in %.2f s "
              "of 10 s allowed",
              rows.size(), bad, worst, seconds)};
}

// ---- 2 ---------------------------------------------------------------------

Outcome counting_bound_equivalence() {
  std::size_t violations = 0, instances = 0;
  double min_slack = 1e9;
  for (int n : {10, 12}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      ExperimentConfig config;
      config.params = {0.3, 0.05};
      config.n = n;
      config.epsilon = 0.05;
      config.ell = 2;
      config.master_seed = seed;
      const BinnedCode code = build_code(config);
      const int k = config.read_budget();
      const double delta = min_equivocation(code, k).delta;
      const auto l_max = consistency_max(code, k).l_max;
      const double slack = delta - counting_bound(code.rate_bits(), k, static_cast<double>(l_max));
      min_slack = std::min(min_slack, slack);
      violations += slack < -1e-9 ? 1 : 0;
      ++instances;
    }
  }
  return {violations == 0,
          fmt("%zu codebooks, %zu violations, min(delta - bound) = %.4f bits", instances, violations, min_slack)};
}

// ---- 3 ---------------------------------------------------------------------

Outcome regime_separation() {
  // n = 12, read budget 3, base codebook of 2^10 words
  ExperimentConfig config;
  config.params = {0.25, 0.02};
  config.n = 12;
  config.epsilon = 0.02;
  const int k = config.read_budget();
  const int ell_high = 5;      // ell / n > rho_r
  const int ell_low = 1;       // ell / n < rho_r
  const int ell_eta = k - 2;   // floor(rho_r n) - 2
  int smaller = 0, eta_ok = 0;
  double worst_eta_margin = 1e9;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    config.master_seed = seed;
    config.ell = 0;
    const Codebook base = build_code(config).base();
    const double high = sem_surrogate(BinnedCode(base, ell_high), k).value;
    const double low = sem_surrogate(BinnedCode(base, ell_low), k).value;
    smaller += high < low ? 1 : 0;

    const BinnedCode code(base, ell_eta);
    const double eta = min_equivocation(code, k).delta / config.n;
    const double r_prime = code.message_bits() / config.n;
    const double margin = eta - (r_prime - 2.0 * std::log2(config.n) / config.n);
    worst_eta_margin = std::min(worst_eta_margin, margin);
    eta_ok += margin >= 0.0 ? 1 : 0;
  }
  return {smaller >= 90 && eta_ok >= 90,
          fmt("sem(ell=%d) < sem(ell=%d) in %d/100; eta >= R' - 2 log2(n)/n (ell=%d) in %d/100, min margin %.3f",
              ell_high, ell_low, smaller, ell_eta, eta_ok, worst_eta_margin)};
}

// ---- 4 ---------------------------------------------------------------------

Outcome restriction_identity() {
  Rng rng(77);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 13));
    const std::size_t size = 1 + uniform_below(rng, 256);
    const Codebook bin = sample_codebook(n, size, rng());
    const Support s = random_support(n, static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n) + 1)), rng);
    worst = std::max(worst, std::abs(soft_cover_divergence(bin.words, s) - soft_cover_divergence_padded(bin.words, s)));
  }
  return {worst <= 1e-12, fmt("1000 instances, max |difference| = %.2e", worst)};
}

// ---- 5 and 8 share their parameters ----------------------------------------

ExperimentConfig gap_config(std::uint64_t seed) {
  ExperimentConfig config;
  config.params = {1.0 / 7.0, 1.0 / 7.0};  // 2 reads, 2 errors at n = 14
  config.n = 14;
  config.epsilon = 0.15;
  config.ell = 0;  // floor(rho_r n) - 2
  config.trials = 2000;
  config.master_seed = seed;
  return config;
}

Outcome reliability_gap() {
  int separated = 0, ordered = 0;
  std::string rates;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ExperimentConfig config = gap_config(seed);
    const BinnedCode code = build_code(config);
    config.adversary.kind = StrategyKind::within_view_exhaustive;
    const Estimate exhaustive = run_reliability(config, code).estimate;
    config.adversary.kind = StrategyKind::full_view_midpoint;
    const Estimate omniscient = run_reliability(config, code).estimate;
    config.adversary.kind = StrategyKind::oblivious_random;
    const Estimate oblivious = run_reliability(config, code).estimate;
    separated += exhaustive.rate < omniscient.rate && exhaustive.high < omniscient.low ? 1 : 0;
    ordered += oblivious.rate <= exhaustive.rate + exhaustive.ci95 ? 1 : 0;
    rates += fmt(" %.3f/%.3f/%.3f", exhaustive.rate, omniscient.rate, oblivious.rate);
  }
  return {separated >= 9 && ordered == 10,
          fmt("separated in %d/10 seeds, ordered in %d/10; exhaustive/omniscient/oblivious:%s", separated, ordered,
              rates.c_str())};
}

Outcome reduction_direction() {
  int within = 0, eta_ok = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ExperimentConfig config = gap_config(seed);
    config.mode = ChannelMode::random_wtc;
    config.xi = 1.0 / config.n;
    config.adversary.kind = StrategyKind::within_view_exhaustive;
    const RandomWtcReport report = run_random_wtc(config);
    const Estimate& bsc = report.bsc.estimate;
    const Estimate& adv = report.awtc.estimate;
    within += bsc.rate <= adv.rate + 3.0 * adv.ci95 ? 1 : 0;
    eta_ok += report.eta_bec >= report.eta_awtc ? 1 : 0;
    detail += fmt(" %.3f/%.3f", bsc.rate, adv.rate);
  }
  return {within >= 9 && eta_ok == 10,
          fmt("BSC within 3 intervals in %d/10 seeds, eta_bec >= eta_awtc in %d/10; bsc/awtc:%s", within, eta_ok,
              detail.c_str())};
}

// ---- 6 ---------------------------------------------------------------------

Outcome information_firewall() {
  constexpr std::size_t kPairs = 10000;
  std::vector<BinnedCode> codes;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) codes.emplace_back(sample_codebook(12, 64, seed), 1);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) codes.push_back(build_code(gap_config(seed)));
  const Strategy strategies[] = {{StrategyKind::oblivious_random, {}},
                                 {StrategyKind::within_view_greedy, {}},
                                 {StrategyKind::within_view_exhaustive, {}}};

  std::vector<int> violations(kPairs, 0), checked(kPairs, 0);
  parallel_for(kPairs, [&](std::size_t t) {
    const BinnedCode& code = codes[t % codes.size()];
    const auto& words = code.base().words;
    const int n = code.n();
    Rng rng(derive_seed(0xf1e3, t));
    // draw until the view has two consistent codewords with different values
    for (;;) {
      const Support support = random_support(n, budget_for(1.0 / 7.0, n) + 1, rng);
      const std::size_t a = uniform_below(rng, words.size());
      const auto consistent = consistent_subset(words, observe(words[a], support));
      std::vector<std::size_t> others;
      for (std::size_t i : consistent)
        if (words[i] != words[a]) others.push_back(i);
      if (others.empty()) continue;
      const std::size_t b = others[uniform_below(rng, others.size())];
      const View va = observe(words[a], support);
      const View vb = observe(words[b], support);
      if (!(va == vb)) {
        violations[t] = 1;
        break;
      }
      const std::uint64_t strategy_seed = rng();
      for (const Strategy& s : strategies) {
        Rng ra(strategy_seed), rb(strategy_seed);
        const Word ea = choose_error(s, code, va, 2, ra);
        const Word eb = choose_error(s, code, vb, 2, rb);
        violations[t] += (ea == eb && ea.weight() <= 2) ? 0 : 1;
      }
      checked[t] = 1;
      break;
    }
  });
  std::size_t total = 0, pairs = 0;
  for (std::size_t t = 0; t < kPairs; ++t) {
    total += static_cast<std::size_t>(violations[t]);
    pairs += static_cast<std::size_t>(checked[t]);
  }
  return {total == 0 && pairs == kPairs,
          fmt("%zu paired trials x 3 strategies, %zu violations", pairs, total)};
}

// ---- 7 ---------------------------------------------------------------------

Outcome list_size_and_conflicts() {
  std::vector<int> mismatches(50, 0);
  parallel_for(50, [&](std::size_t i) {
    const int n = 6 + static_cast<int>(i % 7);
    const std::size_t size = std::size_t{8} << (i % 5);
    const int radius = static_cast<int>(i % 4);
    const Codebook cb = sample_codebook(n, size, 1000 + i);
    const auto raw = oracle::raw_words(cb);
    if (max_ball_occupancy(cb, radius).count != oracle::ball_occupancy(cb, radius)) ++mismatches[i];

    Rng rng(2000 + i);
    std::vector<std::size_t> subset;
    for (std::size_t j = 0; j < cb.size(); ++j)
      if (bernoulli(rng, 0.5)) subset.push_back(j);
    const Word e = random_word_of_weight(n, radius, rng);
    if (conflict_count(cb, subset, e, radius) != oracle::conflicts(raw, subset, e.bits(), n, radius)) ++mismatches[i];
  });
  int total = 0;
  for (int m : mismatches) total += m;
  return {total == 0, fmt("50 instances (n = 6..12), %d mismatches", total)};
}

// ---- 9 ---------------------------------------------------------------------

std::string experiment_bytes(unsigned threads) {
  std::ostringstream out;
  const std::vector<double> rho_w{0.05, 0.1, 0.2};
  write_bounds_csv(out, bounds_grid(rho_w, 0.01));

  for (StrategyKind kind : {StrategyKind::oblivious_random, StrategyKind::within_view_greedy,
                            StrategyKind::within_view_exhaustive, StrategyKind::full_view_midpoint}) {
    ExperimentConfig config = gap_config(3);
    config.trials = 500;
    config.threads = threads;
    config.adversary.kind = kind;
    const BinnedCode code = build_code(config);
    save_codebook(out, code);
    const auto result = run_reliability(config, code);
    write_reliability_csv(out, config, code, result);
    write_trials_jsonl(out, result.records);
  }

  ExperimentConfig config = gap_config(4);
  config.threads = threads;
  config.trials = 500;
  config.mode = ChannelMode::random_wtc;
  config.xi = 1.0 / 14.0;
  config.adversary.kind = StrategyKind::within_view_exhaustive;
  const auto report = run_random_wtc(config);
  write_random_wtc_csv(out, config, report);
  write_trials_jsonl(out, report.bsc.records);

  config.mode = ChannelMode::awtc;
  config.samples = 100;
  const BinnedCode code = build_code(config);
  write_conflicts_csv(out, run_conflicts(config, code));
  write_secrecy_csv(out, secrecy_report(code, 2));
  write_secrecy_csv(out, secrecy_report(code, 2, SearchMode::sampled, 30, 5));
  return out.str();
}

Outcome reproducibility() {
  const std::string first = experiment_bytes(1);
  const std::string second = experiment_bytes(0);
  const std::string third = experiment_bytes(3);
  return {first == second && second == third,
          fmt("%zu bytes of CSV/JSONL across 3 runs (1, all, 3 threads): %s", first.size(),
              first == second && second == third ? "identical" : "DIFFERENT")};
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  // --known-failure N: criterion N is a documented negative result. It still
  // prints FAIL but does not set the exit status; an unexpected PASS does.
  std::set<int> known;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--known-failure") {
      std::fprintf(stderr, "usage: %s [--known-failure N]...\n", argv[0]);
      return 2;
    }
    known.insert(std::atoi(argv[i + 1]));
  }

  const std::vector<Criterion> criteria{
      {1, "bounds reproduction", 0, bounds_reproduction},
      {2, "counting-argument oracle equivalence", 300, counting_bound_equivalence},
      {3, "secrecy regime separation", 0, regime_separation},
      {4, "restriction identity", 0, restriction_identity},
      {5, "reliability gap", 1800, reliability_gap},
      {6, "information firewall", 0, information_firewall},
      {7, "list-size and conflict oracles", 0, list_size_and_conflicts},
      {8, "reduction direction", 0, reduction_direction},
      {9, "reproducibility", 0, reproducibility},
  };
  int failures = 0, unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", seconds);
    if (c.limit_seconds > 0) {
      timing += fmt(" of %.0f s allowed", c.limit_seconds);
      if (seconds >= c.limit_seconds) {
        outcome.pass = false;
        timing += ", TOO SLOW";
      }
    }
    const bool expected_failure = known.count(c.id) > 0;
    std::printf("criterion %d %s: %s -- %s [%s]%s\n", c.id, outcome.pass ? "PASS" : "FAIL", c.title,
                outcome.detail.c_str(), timing.c_str(),
                expected_failure ? (outcome.pass ? " (listed as a known failure but passed)" : " (known failure)")
                                 : "");
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
    if (outcome.pass == expected_failure) ++unexpected;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return unexpected == 0 ? 0 : 1;
}
