#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "awtc/channel.hpp"
#include "awtc/error.hpp"
#include "awtc/harness.hpp"

namespace awtc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(value) + "'");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string text(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(out))
    throw ConfigError("invalid number for " + std::string(key) + ": '" + text + "'");
  return out;
}

}  // namespace

int ExperimentConfig::read_budget() const { return budget_for(params.rho_r, n); }
int ExperimentConfig::write_budget() const { return budget_for(params.rho_w, n); }

double ExperimentConfig::nominal_rate() const { return 1.0 - binary_entropy(params.rho_w) - epsilon; }

void ExperimentConfig::validate() const {
  if (!(params.rho_r >= 0.0 && params.rho_r <= 1.0)) throw ConfigError("rho_r must lie in [0, 1]");
  if (!(params.rho_w >= 0.0 && params.rho_w <= 0.5)) throw ConfigError("rho_w must lie in [0, 1/2]");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (!codebook) {
    if (n < 1 || n > Word::kMaxLength) throw ConfigError("n must lie in [1, 64]");
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
    const int bits = codebook_index_bits(nominal_rate(), n);
    if (ell < 0 || ell > bits)
      throw ConfigError("ell = " + std::to_string(ell) + " leaves no message (floor(R n) = " +
                        std::to_string(bits) + ")");
  }
  if (!(xi >= 0.0 && xi <= 1.0)) throw ConfigError("xi must lie in [0, 1]");
  if (samples < 1) throw ConfigError("samples must be at least 1");
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "n") {
    config.n = parse_integer<int>(key, value);
  } else if (key == "rho_r" || key == "rho-r") {
    config.params.rho_r = parse_real(key, value);
  } else if (key == "rho_w" || key == "rho-w") {
    config.params.rho_w = parse_real(key, value);
  } else if (key == "epsilon") {
    config.epsilon = parse_real(key, value);
  } else if (key == "ell") {
    config.ell = parse_integer<int>(key, value);
  } else if (key == "trials") {
    config.trials = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    config.master_seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "adversary") {
    config.adversary.kind = parse_strategy_kind(value);
  } else if (key == "max_enum" || key == "max-enum") {
    config.adversary.caps.max_enum = parse_integer<std::size_t>(key, value);
  } else if (key == "max_n" || key == "max-n") {
    config.adversary.caps.max_n = parse_integer<int>(key, value);
  } else if (key == "max_budget" || key == "max-budget") {
    config.adversary.caps.max_budget = parse_integer<int>(key, value);
  } else if (key == "mode") {
    if (value == "awtc")
      config.mode = ChannelMode::awtc;
    else if (value == "random-wtc")
      config.mode = ChannelMode::random_wtc;
    else
      throw ConfigError("mode must be awtc or random-wtc");
  } else if (key == "xi") {
    config.xi = parse_real(key, value);
  } else if (key == "interval") {
    if (value == "normal")
      config.interval = IntervalKind::normal;
    else if (value == "clopper-pearson")
      config.interval = IntervalKind::clopper_pearson;
    else
      throw ConfigError("interval must be normal or clopper-pearson");
  } else if (key == "threads") {
    config.threads = parse_integer<unsigned>(key, value);
  } else if (key == "samples") {
    config.samples = parse_integer<std::size_t>(key, value);
  } else if (key == "secrecy_mode" || key == "secrecy-mode") {
    if (value == "exact")
      config.secrecy_mode = SearchMode::exhaustive;
    else if (value == "sampled")
      config.secrecy_mode = SearchMode::sampled;
    else
      throw ConfigError("secrecy mode must be exact or sampled");
  } else if (key == "codebook") {
    if (value.empty())
      config.codebook.reset();
    else
      config.codebook = std::filesystem::path(std::string(value));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

}  // namespace awtc
