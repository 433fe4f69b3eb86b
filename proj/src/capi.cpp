#include "awtc/awtc.h"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "awtc/bounds.hpp"
#include "awtc/channel.hpp"
#include "awtc/code.hpp"
#include "awtc/error.hpp"
#include "awtc/harness.hpp"
#include "awtc/secrecy.hpp"

struct awtc_code {
  awtc::BinnedCode code;
};

struct awtc_config {
  awtc::ExperimentConfig config;
};

namespace {

thread_local std::string last_error;

awtc_status status_for(awtc::ErrorKind kind) {
  switch (kind) {
    case awtc::ErrorKind::domain: return AWTC_ERR_DOMAIN;
    case awtc::ErrorKind::config: return AWTC_ERR_CONFIG;
    case awtc::ErrorKind::resource: return AWTC_ERR_RESOURCE;
    case awtc::ErrorKind::format: return AWTC_ERR_FORMAT;
    case awtc::ErrorKind::budget: return AWTC_ERR_BUDGET;
    case awtc::ErrorKind::io: return AWTC_ERR_IO;
  }
  return AWTC_ERR_INTERNAL;
}

struct NullArgument : std::invalid_argument {
  NullArgument() : std::invalid_argument("null argument") {}
};

template <typename... Ptrs>
void require_args(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw NullArgument();
}

// Runs body and converts any exception into a status plus last_error.
template <typename F>
awtc_status call(F&& body) {
  last_error.clear();
  try {
    body();
    return AWTC_OK;
  } catch (const awtc::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const NullArgument& e) {
    last_error = e.what();
    return AWTC_ERR_NULL_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AWTC_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AWTC_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return AWTC_ERR_INTERNAL;
  }
}

template <typename Writer>
void write_file(const char* path, Writer&& writer) {
  if (path == nullptr) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw awtc::IoError(std::string("cannot open ") + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw awtc::IoError(std::string("failed writing ") + path);
}

void fill(const awtc::Estimate& e, awtc_estimate* out) {
  *out = {e.trials, e.failures, e.rate, e.ci95, e.low, e.high};
}

const awtc::BinnedCode& resolve(const awtc_config* config, const awtc_code* code,
                                std::optional<awtc::BinnedCode>& storage) {
  if (code != nullptr) return code->code;
  storage.emplace(awtc::build_code(config->config));
  return *storage;
}

}  // namespace

extern "C" {

const char* awtc_last_error(void) { return last_error.c_str(); }

const char* awtc_status_name(awtc_status status) {
  switch (status) {
    case AWTC_OK: return "ok";
    case AWTC_ERR_DOMAIN: return "domain error";
    case AWTC_ERR_CONFIG: return "config error";
    case AWTC_ERR_RESOURCE: return "resource cap exceeded";
    case AWTC_ERR_FORMAT: return "format error";
    case AWTC_ERR_BUDGET: return "budget violation";
    case AWTC_ERR_IO: return "i/o error";
    case AWTC_ERR_NULL_ARGUMENT: return "null argument";
    case AWTC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* awtc_version(void) { return "1.0.0"; }

awtc_status awtc_binary_entropy(double p, double* out) {
  return call([&] {
    require_args(out);
    *out = awtc::binary_entropy(p);
  });
}

awtc_status awtc_f_objective(double p, double rho_r, double rho_w, double* out) {
  return call([&] {
    require_args(out);
    *out = awtc::f_objective(p, {rho_r, rho_w});
  });
}

awtc_status awtc_capacity_bounds(double rho_r, double rho_w, awtc_bounds* out) {
  return call([&] {
    require_args(out);
    const auto b = awtc::capacity_bounds({rho_r, rho_w});
    *out = {b.lower_raw, b.lower, b.upper, b.p_star, b.f_min, b.zero_capacity ? 1 : 0};
  });
}

awtc_status awtc_bounds_grid_csv(const double* rho_w, size_t count, double rho_r_step, const char* path,
                                 size_t* rows) {
  return call([&] {
    require_args(rho_w);
    const auto grid = awtc::bounds_grid(std::span<const double>(rho_w, count), rho_r_step);
    write_file(path, [&](std::ostream& out) { awtc::write_bounds_csv(out, grid); });
    if (rows != nullptr) *rows = grid.size();
  });
}

awtc_status awtc_code_sample(int n, int index_bits, int ell, uint64_t seed, awtc_code** out) {
  return call([&] {
    require_args(out);
    *out = nullptr;
    if (index_bits < 0 || index_bits > 40) throw awtc::DomainError("index bits must lie in [0, 40]");
    auto base = awtc::sample_codebook(n, std::size_t{1} << index_bits, seed);
    *out = new awtc_code{awtc::BinnedCode(std::move(base), ell)};
  });
}

awtc_status awtc_code_from_words(int n, const uint64_t* words, size_t count, int ell, awtc_code** out) {
  return call([&] {
    require_args(words, out);
    *out = nullptr;
    awtc::Codebook base;
    base.n = n;
    for (size_t i = 0; i < count; ++i) base.words.emplace_back(n, words[i]);
    base.rate = count > 0 && n > 0 ? std::log2(static_cast<double>(count)) / n : 0.0;
    *out = new awtc_code{awtc::BinnedCode(std::move(base), ell)};
  });
}

awtc_status awtc_code_load(const char* path, awtc_code** out) {
  return call([&] {
    require_args(path, out);
    *out = nullptr;
    *out = new awtc_code{awtc::load_codebook(std::filesystem::path(path))};
  });
}

awtc_status awtc_code_save(const awtc_code* code, const char* path) {
  return call([&] {
    require_args(code, path);
    awtc::save_codebook(std::filesystem::path(path), code->code);
  });
}

void awtc_code_free(awtc_code* code) { delete code; }

awtc_status awtc_code_get_info(const awtc_code* code, awtc_code_info* out) {
  return call([&] {
    require_args(code, out);
    const auto& c = code->code;
    *out = {c.n(), c.ell(), c.base().size(), c.num_messages(), c.base().seed};
  });
}

awtc_status awtc_code_word(const awtc_code* code, size_t index, uint64_t* out) {
  return call([&] {
    require_args(code, out);
    if (index >= code->code.base().size()) throw awtc::DomainError("word index out of range");
    *out = code->code.base().words[index].bits();
  });
}

awtc_status awtc_code_encode(const awtc_code* code, size_t message, size_t seed_r, uint64_t* out) {
  return call([&] {
    require_args(code, out);
    *out = code->code.encode(message, seed_r).bits();
  });
}

awtc_status awtc_code_decode(const awtc_code* code, uint64_t received, size_t* message) {
  return call([&] {
    require_args(code, message);
    *message = code->code.decode_nearest(awtc::Word(code->code.n(), received));
  });
}

awtc_status awtc_code_max_ball(const awtc_code* code, int radius, size_t* count, uint64_t* center) {
  return call([&] {
    require_args(code, count);
    const auto ball = awtc::max_ball_occupancy(code->code.base(), radius);
    *count = ball.count;
    if (center != nullptr) *center = ball.center.bits();
  });
}

awtc_status awtc_code_consistent_count(const awtc_code* code, uint64_t support_mask, uint64_t symbols,
                                       size_t* count) {
  return call([&] {
    require_args(code, count);
    const awtc::View view(awtc::Support(code->code.n(), support_mask), symbols);
    *count = awtc::consistent_subset(code->code.base().words, view).size();
  });
}

awtc_status awtc_equivocation(const awtc_code* code, uint64_t support_mask, double* bits) {
  return call([&] {
    require_args(code, bits);
    *bits = awtc::equivocation_for_support(code->code, awtc::Support(code->code.n(), support_mask));
  });
}

awtc_status awtc_secrecy_report_csv(const awtc_code* code, int read_budget, int sampled, size_t samples,
                                    uint64_t seed, const char* csv_path, awtc_secrecy_summary* out) {
  return call([&] {
    require_args(code);
    const auto mode = sampled ? awtc::SearchMode::sampled : awtc::SearchMode::exhaustive;
    const auto report = awtc::secrecy_report(code->code, read_budget, mode, samples, seed);
    write_file(csv_path, [&](std::ostream& o) { awtc::write_secrecy_csv(o, report); });
    if (out != nullptr)
      *out = {report.rate_bits,         report.message_bits,   report.delta.delta, report.eta,
              report.consistency.l_max, report.counting_bound, report.sem.value,   report.exact ? 1 : 0};
  });
}

awtc_status awtc_config_new(awtc_config** out) {
  return call([&] {
    require_args(out);
    *out = new awtc_config{};
  });
}

void awtc_config_free(awtc_config* config) { delete config; }

awtc_status awtc_config_set(awtc_config* config, const char* key, const char* value) {
  return call([&] {
    require_args(config, key, value);
    awtc::apply_setting(config->config, key, value);
  });
}

awtc_status awtc_config_load(awtc_config* config, const char* path) {
  return call([&] {
    require_args(config, path);
    awtc::apply_config_file(config->config, path);
  });
}

awtc_status awtc_config_validate(const awtc_config* config) {
  return call([&] {
    require_args(config);
    config->config.validate();
  });
}

awtc_status awtc_build_code(const awtc_config* config, awtc_code** out) {
  return call([&] {
    require_args(config, out);
    *out = nullptr;
    *out = new awtc_code{awtc::build_code(config->config)};
  });
}

awtc_status awtc_run_reliability(const awtc_config* config, const awtc_code* code, const char* csv_path,
                                 const char* jsonl_path, awtc_estimate* out) {
  return call([&] {
    require_args(config);
    std::optional<awtc::BinnedCode> storage;
    const auto& c = resolve(config, code, storage);
    const auto result = awtc::run_reliability(config->config, c);
    write_file(csv_path, [&](std::ostream& o) { awtc::write_reliability_csv(o, config->config, c, result); });
    write_file(jsonl_path, [&](std::ostream& o) { awtc::write_trials_jsonl(o, result.records); });
    if (out != nullptr) fill(result.estimate, out);
  });
}

awtc_status awtc_run_reduction(const awtc_config* config, const awtc_code* code, const char* csv_path,
                               const char* jsonl_path, awtc_reduction* out) {
  return call([&] {
    require_args(config);
    std::optional<awtc::BinnedCode> storage;
    const auto& c = resolve(config, code, storage);
    awtc::ExperimentConfig cfg = config->config;
    cfg.mode = awtc::ChannelMode::random_wtc;
    const auto report = awtc::run_random_wtc(cfg, c);
    write_file(csv_path, [&](std::ostream& o) { awtc::write_random_wtc_csv(o, cfg, report); });
    write_file(jsonl_path, [&](std::ostream& o) { awtc::write_trials_jsonl(o, report.bsc.records); });
    if (out != nullptr) {
      fill(report.bsc.estimate, &out->random_wtc);
      fill(report.awtc.estimate, &out->awtc);
      out->flip_prob = report.flip_prob;
      out->erase_prob = report.erase_prob;
      out->eta_bec = report.eta_bec;
      out->eta_awtc = report.eta_awtc;
      out->eta_awtc_exact = report.awtc_min.exact ? 1 : 0;
      out->message_rate = report.message_rate;
    }
  });
}

awtc_status awtc_run_conflicts(const awtc_config* config, const awtc_code* code, const char* csv_path,
                               size_t* total_conflicts) {
  return call([&] {
    require_args(config);
    std::optional<awtc::BinnedCode> storage;
    const auto& c = resolve(config, code, storage);
    const auto records = awtc::run_conflicts(config->config, c);
    write_file(csv_path, [&](std::ostream& o) { awtc::write_conflicts_csv(o, records); });
    if (total_conflicts != nullptr) {
      size_t total = 0;
      for (const auto& r : records) total += r.conflicts;
      *total_conflicts = total;
    }
  });
}

awtc_status awtc_event_e0(const awtc_code* code, int read_budget, double epsilon, size_t samples, uint64_t seed,
                          double* pass_fraction) {
  return call([&] {
    require_args(code, pass_fraction);
    *pass_fraction = awtc::event_e0_check(code->code.base(), read_budget, epsilon, samples, seed).pass_fraction;
  });
}

}  // extern "C"
