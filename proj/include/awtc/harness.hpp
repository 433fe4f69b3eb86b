#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awtc/adversary.hpp"
#include "awtc/bounds.hpp"
#include "awtc/code.hpp"
#include "awtc/secrecy.hpp"
#include "awtc/view.hpp"

namespace awtc {

enum class ChannelMode { awtc, random_wtc };
enum class IntervalKind { normal, clopper_pearson };

struct ExperimentConfig {
  ChannelParams params{0.25, 0.1};
  int n = 12;
  double epsilon = 0.1;  // rate slack: R = 1 - h(rho_w) - epsilon
  int ell = 0;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  Strategy adversary;
  ChannelMode mode = ChannelMode::awtc;
  double xi = 0.0;
  IntervalKind interval = IntervalKind::normal;
  unsigned threads = 0;  // 0: hardware concurrency
  std::size_t samples = 500;
  SearchMode secrecy_mode = SearchMode::exhaustive;
  std::optional<std::filesystem::path> codebook;  // load instead of sampling

  int read_budget() const;   // floor(rho_r n)
  int write_budget() const;  // floor(rho_w n)
  double nominal_rate() const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Applies one key=value setting. Throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
/// Applies every key=value line; '#' starts a comment.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Seed of the codebook sampled for a config: derived from master_seed.
std::uint64_t codebook_seed(std::uint64_t master_seed);

/// Loads config.codebook, or samples 2^floor(R n) words and bins them by ell.
BinnedCode build_code(const ExperimentConfig& config);

// Codebook files: "AWTC-CODEBOOK v1", "n=.. words=.. ell=.. seed=..", then one
// hex word per line.
void save_codebook(std::ostream& out, const BinnedCode& code);
void save_codebook(const std::filesystem::path& path, const BinnedCode& code);
/// Throws FormatError naming the offending line.
BinnedCode load_codebook(std::istream& in);
BinnedCode load_codebook(const std::filesystem::path& path);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t message = 0;
  std::size_t seed_r = 0;
  Support support;
  int error_weight = 0;
  std::size_t decoded = 0;
  bool success = true;
};

struct Estimate {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double rate = 0.0;
  double ci95 = 0.0;  // half-width
  double low = 0.0;
  double high = 0.0;
};

Estimate estimate_rate(std::size_t failures, std::size_t trials, IntervalKind interval = IntervalKind::normal);

struct ReliabilityResult {
  Estimate estimate;
  std::vector<TrialRecord> records;
};

/// Nearest-neighbor decoding error of the config's code against the config's
/// adversary, over independent trials seeded by derive_seed(master, trial).
ReliabilityResult run_reliability(const ExperimentConfig& config);
ReliabilityResult run_reliability(const ExperimentConfig& config, const BinnedCode& code);

struct RandomWtcReport {
  double flip_prob = 0.0;   // BSC(rho_w - xi) main channel
  double erase_prob = 0.0;  // BEC(1 - rho_r + xi) eavesdropper
  ReliabilityResult bsc;
  ReliabilityResult awtc;
  double eta_bec = 0.0;          // mean H(S | V) / n over realized erasure patterns
  MinEquivocation awtc_min;      // min over supports of size floor(rho_r n)
  double eta_awtc = 0.0;         // awtc_min.delta / n
  double message_rate = 0.0;     // R'
};

/// Random wiretap channel next to the adversarial one, same code.
RandomWtcReport run_random_wtc(const ExperimentConfig& config);
RandomWtcReport run_random_wtc(const ExperimentConfig& config, const BinnedCode& code);

struct E0Check {
  double pass_fraction = 0.0;
  double window_low = 0.0;
  double window_high = 0.0;
  std::vector<std::size_t> sizes;  // |C|_V| per sampled view
};

/// Fraction of sampled views (random support of size read_budget, symbols of
/// a random codeword) whose consistent set size lies in
/// [2^{(R - rho_r - eps/2) n}, 2^{(R - rho_r + eps/2) n}], R = log2|C| / n.
E0Check event_e0_check(const Codebook& codebook, int read_budget, double epsilon, std::size_t samples,
                       std::uint64_t seed);

/// #{x in subset : x XOR e lies within `radius` of some other codeword}.
/// Throws BudgetError when wt(e) > radius.
std::size_t conflict_count(const Codebook& codebook, std::span<const std::size_t> subset, const Word& error,
                           int radius);

struct ConflictRecord {
  std::size_t sample = 0;
  Support support;
  std::size_t consistent = 0;  // |C|_V|
  std::size_t block = 0;
  std::size_t block_size = 0;
  int error_weight = 0;
  std::size_t conflicts = 0;
};

/// Splits C|_V of sampled views into codebook-order blocks of
/// max(1, floor(2^{eps n / 4})) and counts conflicts of each block under a
/// random weight-floor(rho_w n) error.
std::vector<ConflictRecord> run_conflicts(const ExperimentConfig& config, const BinnedCode& code);

// Writers. All reals use nine significant digits.
void write_reliability_csv(std::ostream& out, const ExperimentConfig& config, const BinnedCode& code,
                           const ReliabilityResult& result);
void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records);
void write_random_wtc_csv(std::ostream& out, const ExperimentConfig& config, const RandomWtcReport& report);
void write_conflicts_csv(std::ostream& out, std::span<const ConflictRecord> records);

}  // namespace awtc
