#include "awtc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <boost/math/distributions/beta.hpp>

#include "awtc/channel.hpp"
#include "awtc/error.hpp"
#include "awtc/format.hpp"
#include "awtc/parallel.hpp"
#include "awtc/rng.hpp"

namespace awtc {
namespace {

// Stream tags keep the codebook, the BSC arm and the BEC arm on seeds
// disjoint from the adversarial trials.
constexpr std::uint64_t kCodebookStream = 0xc0deb00c'0000'0001ULL;
constexpr std::uint64_t kBscStream = 0x5eed'0000'0000'0b5cULL;
constexpr std::uint64_t kBecStream = 0x5eed'0000'0000'0becULL;
constexpr std::uint64_t kConflictStream = 0x5eed'0000'0000'c0f1ULL;

unsigned worker_count(const ExperimentConfig& config) {
  return config.threads == 0 ? default_threads() : config.threads;
}

// Uniform message and seed, shared by every arm so matched trials transmit
// the same codeword.
struct Transmission {
  std::size_t message;
  std::size_t seed_r;
  std::size_t index;
};

Transmission draw_transmission(const BinnedCode& code, Rng& rng) {
  const std::size_t message = uniform_below(rng, code.num_messages());
  const std::size_t seed_r = uniform_below(rng, code.bin_size());
  return {message, seed_r, code.index_of(message, seed_r)};
}

Estimate finish(std::vector<TrialRecord>& records, IntervalKind interval) {
  std::size_t failures = 0;
  for (const TrialRecord& r : records) failures += r.success ? 0 : 1;
  return estimate_rate(failures, records.size(), interval);
}

void write_json_support(std::ostream& out, const Support& support) {
  out << '[';
  bool first = true;
  for (int i : support.indices()) {
    if (!first) out << ',';
    out << i + 1;
    first = false;
  }
  out << ']';
}

}  // namespace

std::uint64_t codebook_seed(std::uint64_t master_seed) { return derive_seed(master_seed, kCodebookStream); }

BinnedCode build_code(const ExperimentConfig& config) {
  config.validate();
  if (config.codebook) return load_codebook(*config.codebook);
  const int bits = codebook_index_bits(config.nominal_rate(), config.n);
  Codebook base = sample_codebook(config.n, std::size_t{1} << bits, codebook_seed(config.master_seed));
  base.rate = config.nominal_rate();
  return BinnedCode(std::move(base), config.ell);
}

Estimate estimate_rate(std::size_t failures, std::size_t trials, IntervalKind interval) {
  if (trials == 0) throw DomainError("estimate needs at least one trial");
  if (failures > trials) throw DomainError("more failures than trials");
  Estimate out;
  out.trials = trials;
  out.failures = failures;
  const double n = static_cast<double>(trials);
  const double x = static_cast<double>(failures);
  out.rate = x / n;
  if (interval == IntervalKind::normal) {
    out.ci95 = 1.959963984540054 * std::sqrt(out.rate * (1.0 - out.rate) / n);
    out.low = std::max(0.0, out.rate - out.ci95);
    out.high = std::min(1.0, out.rate + out.ci95);
  } else {
    using boost::math::beta_distribution;
    using boost::math::quantile;
    out.low = failures == 0 ? 0.0 : quantile(beta_distribution<double>(x, n - x + 1.0), 0.025);
    out.high = failures == trials ? 1.0 : quantile(beta_distribution<double>(x + 1.0, n - x), 0.975);
    out.ci95 = (out.high - out.low) / 2.0;
  }
  return out;
}

ReliabilityResult run_reliability(const ExperimentConfig& config) { return run_reliability(config, build_code(config)); }

ReliabilityResult run_reliability(const ExperimentConfig& config, const BinnedCode& code) {
  config.validate();
  const int n = code.n();
  const int read_budget = budget_for(config.params.rho_r, n);
  const int write_budget = budget_for(config.params.rho_w, n);
  const Strategy& strategy = config.adversary;

  ReliabilityResult result;
  result.records.resize(config.trials);
  parallel_for(
      config.trials,
      [&](std::size_t t) {
        Rng rng(derive_seed(config.master_seed, t));
        const Transmission tx = draw_transmission(code, rng);
        const Word& x = code.base().words[tx.index];
        const Support support = choose_support(strategy, n, read_budget, rng);
        const Word error = strategy.respects_view_constraint()
                               ? choose_error(strategy, code, observe(x, support), write_budget, rng)
                               : choose_error_omniscient(code, tx.index, write_budget);
        const std::size_t decoded = code.decode_nearest(apply_error(x, error, write_budget));
        result.records[t] = {t, tx.message, tx.seed_r, support, error.weight(), decoded, decoded == tx.message};
      },
      worker_count(config));
  result.estimate = finish(result.records, config.interval);
  return result;
}

RandomWtcReport run_random_wtc(const ExperimentConfig& config) { return run_random_wtc(config, build_code(config)); }

RandomWtcReport run_random_wtc(const ExperimentConfig& config, const BinnedCode& code) {
  config.validate();
  if (config.mode != ChannelMode::random_wtc) throw ConfigError("run_random_wtc needs mode = random-wtc");
  const int n = code.n();
  RandomWtcReport report;
  report.flip_prob = std::max(0.0, config.params.rho_w - config.xi);
  report.erase_prob = std::min(1.0, 1.0 - config.params.rho_r + config.xi);
  report.message_rate = code.message_bits() / n;

  // Main channel: BSC(rho_w - xi).
  report.bsc.records.resize(config.trials);
  std::vector<std::uint64_t> bec_masks(config.trials);
  parallel_for(
      config.trials,
      [&](std::size_t t) {
        Rng rng(derive_seed(config.master_seed, t));
        const Transmission tx = draw_transmission(code, rng);
        const Word& x = code.base().words[tx.index];
        Rng channel_rng(derive_seed(config.master_seed ^ kBscStream, t));
        const Word received = bsc_transmit(x, report.flip_prob, channel_rng);
        const std::size_t decoded = code.decode_nearest(received);
        report.bsc.records[t] = {t,
                                 tx.message,
                                 tx.seed_r,
                                 Support(n, 0),
                                 (received ^ x).weight(),
                                 decoded,
                                 decoded == tx.message};
        Rng eve_rng(derive_seed(config.master_seed ^ kBecStream, t));
        bec_masks[t] = bec_observe(x, report.erase_prob, eve_rng).support().mask();
      },
      worker_count(config));
  report.bsc.estimate = finish(report.bsc.records, config.interval);

  // Eavesdropper: equivocation of each distinct realized erasure pattern.
  std::map<std::uint64_t, double> equivocation;
  for (std::uint64_t mask : bec_masks) equivocation.emplace(mask, 0.0);
  std::vector<std::map<std::uint64_t, double>::iterator> slots;
  for (auto it = equivocation.begin(); it != equivocation.end(); ++it) slots.push_back(it);
  SecrecyCaps caps;
  caps.max_support = n;
  parallel_for(
      slots.size(),
      [&](std::size_t i) { slots[i]->second = equivocation_for_support(code, Support(n, slots[i]->first), caps); },
      worker_count(config));
  double total = 0.0;
  for (std::uint64_t mask : bec_masks) total += equivocation[mask];
  report.eta_bec = total / static_cast<double>(config.trials) / n;

  ExperimentConfig awtc_config = config;
  awtc_config.mode = ChannelMode::awtc;
  report.awtc = run_reliability(awtc_config, code);
  report.awtc_min = min_equivocation(code, budget_for(config.params.rho_r, n), caps, config.secrecy_mode,
                                     config.samples, config.master_seed);
  report.eta_awtc = report.awtc_min.delta / n;
  return report;
}

E0Check event_e0_check(const Codebook& codebook, int read_budget, double epsilon, std::size_t samples,
                       std::uint64_t seed) {
  if (samples < 1) throw DomainError("event_e0_check needs at least one sample");
  if (read_budget < 0 || read_budget > codebook.n) throw DomainError("read budget out of range");
  const double n = codebook.n;
  const double exponent = std::log2(static_cast<double>(codebook.size())) - read_budget;
  E0Check out;
  out.window_low = std::exp2(exponent - epsilon * n / 2.0);
  out.window_high = std::exp2(exponent + epsilon * n / 2.0);
  out.sizes.resize(samples);
  Rng rng(seed);
  std::size_t pass = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Support support = random_support(codebook.n, read_budget, rng);
    const Word& x = codebook.words[uniform_below(rng, codebook.size())];
    const std::size_t size = consistent_subset(codebook.words, observe(x, support)).size();
    out.sizes[s] = size;
    const double value = static_cast<double>(size);
    if (value >= out.window_low && value <= out.window_high) ++pass;
  }
  out.pass_fraction = static_cast<double>(pass) / static_cast<double>(samples);
  return out;
}

std::size_t conflict_count(const Codebook& codebook, std::span<const std::size_t> subset, const Word& error,
                           int radius) {
  if (error.size() != codebook.n) throw DomainError("error length does not match the codebook");
  if (error.weight() > radius)
    throw BudgetError("error weight " + std::to_string(error.weight()) + " exceeds budget " + std::to_string(radius));
  std::size_t conflicts = 0;
  for (std::size_t index : subset) {
    if (index >= codebook.size()) throw DomainError("subset index out of range");
    const std::uint64_t received = codebook.words[index].bits() ^ error.bits();
    std::size_t in_ball = 0;
    for (const Word& w : codebook.words)
      if (std::popcount(w.bits() ^ received) <= radius) ++in_ball;
    // x itself is within radius of x + e, since wt(e) <= radius.
    if (in_ball > 1) ++conflicts;
  }
  return conflicts;
}

std::vector<ConflictRecord> run_conflicts(const ExperimentConfig& config, const BinnedCode& code) {
  config.validate();
  const int n = code.n();
  const int read_budget = budget_for(config.params.rho_r, n);
  const int write_budget = budget_for(config.params.rho_w, n);
  const auto block_size =
      static_cast<std::size_t>(std::max(1.0, std::floor(std::exp2(config.epsilon * n / 4.0))));

  std::vector<std::vector<ConflictRecord>> per_sample(config.samples);
  parallel_for(
      config.samples,
      [&](std::size_t s) {
        Rng rng(derive_seed(config.master_seed ^ kConflictStream, s));
        const Transmission tx = draw_transmission(code, rng);
        const Support support = random_support(n, read_budget, rng);
        const auto consistent = consistent_subset(code.base().words, observe(code.base().words[tx.index], support));
        const Word error = random_word_of_weight(n, write_budget, rng);
        for (std::size_t start = 0, block = 0; start < consistent.size(); start += block_size, ++block) {
          const std::size_t size = std::min(block_size, consistent.size() - start);
          const auto members = std::span<const std::size_t>(consistent).subspan(start, size);
          per_sample[s].push_back({s, support, consistent.size(), block, size, write_budget,
                                   conflict_count(code.base(), members, error, write_budget)});
        }
      },
      worker_count(config));
  std::vector<ConflictRecord> out;
  for (auto& records : per_sample) out.insert(out.end(), records.begin(), records.end());
  return out;
}

void write_reliability_csv(std::ostream& out, const ExperimentConfig& config, const BinnedCode& code,
                           const ReliabilityResult& result) {
  const Estimate& e = result.estimate;
  out << "adversary,n,rho_r,rho_w,epsilon,ell,codewords,messages,read_budget,write_budget,trials,failures,"
         "error_rate,ci95,ci_low,ci_high\n";
  out << strategy_name(config.adversary.kind) << ',' << code.n() << ',' << format_real(config.params.rho_r) << ','
      << format_real(config.params.rho_w) << ',' << format_real(config.epsilon) << ',' << code.ell() << ','
      << code.base().size() << ',' << code.num_messages() << ',' << budget_for(config.params.rho_r, code.n()) << ','
      << budget_for(config.params.rho_w, code.n()) << ',' << e.trials << ',' << e.failures << ','
      << format_real(e.rate) << ',' << format_real(e.ci95) << ',' << format_real(e.low) << ','
      << format_real(e.high) << '\n';
}

void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records) {
  for (const TrialRecord& r : records) {
    out << "{\"trial\":" << r.trial << ",\"message\":" << r.message << ",\"seed_r\":" << r.seed_r
        << ",\"support\":";
    write_json_support(out, r.support);
    out << ",\"error_weight\":" << r.error_weight << ",\"decoded\":" << r.decoded
        << ",\"success\":" << (r.success ? "true" : "false") << "}\n";
  }
}

void write_random_wtc_csv(std::ostream& out, const ExperimentConfig& config, const RandomWtcReport& report) {
  out << "channel,adversary,xi,flip_prob,erase_prob,trials,failures,error_rate,ci95,eta,eta_exact,message_rate\n";
  const auto row = [&](std::string_view channel, std::string_view adversary, double flip, double erase,
                       const Estimate& e, double eta, bool exact) {
    out << channel << ',' << adversary << ',' << format_real(config.xi) << ',' << format_real(flip) << ','
        << format_real(erase) << ',' << e.trials << ',' << e.failures << ',' << format_real(e.rate) << ','
        << format_real(e.ci95) << ',' << format_real(eta) << ',' << (exact ? 1 : 0) << ','
        << format_real(report.message_rate) << '\n';
  };
  row("random-wtc", "none", report.flip_prob, report.erase_prob, report.bsc.estimate, report.eta_bec, false);
  row("awtc", strategy_name(config.adversary.kind), config.params.rho_w, 1.0 - config.params.rho_r,
      report.awtc.estimate, report.eta_awtc, report.awtc_min.exact);
}

void write_conflicts_csv(std::ostream& out, std::span<const ConflictRecord> records) {
  out << "sample,support,consistent,block,block_size,error_weight,conflicts\n";
  for (const ConflictRecord& r : records)
    out << r.sample << ',' << r.support.to_string() << ',' << r.consistent << ',' << r.block << ','
        << r.block_size << ',' << r.error_weight << ',' << r.conflicts << '\n';
}

}  // namespace awtc
