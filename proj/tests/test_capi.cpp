#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "awtc/awtc.h"

namespace {

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(awtc_status_name(AWTC_OK)) == "ok");
  CHECK(std::string(awtc_status_name(AWTC_ERR_RESOURCE)) == "resource cap exceeded");
  CHECK(std::string(awtc_version()) == "1.0.0");
}

TEST_CASE("bounds through the C interface") {
  double h = 0;
  CHECK(awtc_binary_entropy(0.25, &h) == AWTC_OK);
  CHECK(std::abs(h - 0.811278) <= 1e-6);
  CHECK(awtc_binary_entropy(2.0, &h) == AWTC_ERR_DOMAIN);
  CHECK(std::string(awtc_last_error()).size() > 0);
  CHECK(awtc_binary_entropy(0.5, nullptr) == AWTC_ERR_NULL_ARGUMENT);

  awtc_bounds b{};
  CHECK(awtc_capacity_bounds(0.1, 0.1, &b) == AWTC_OK);
  CHECK(std::abs(b.lower - 0.431004) <= 1e-6);
  CHECK(b.zero_capacity == 0);
  CHECK(awtc_capacity_bounds(0.3, 0.25, &b) == AWTC_OK);
  CHECK(b.zero_capacity == 1);

  const double rho_w[] = {0.05, 0.1};
  std::size_t rows = 0;
  CHECK(awtc_bounds_grid_csv(rho_w, 2, 0.1, "capi_bounds.csv", &rows) == AWTC_OK);
  CHECK(rows == 18);
  CHECK(slurp("capi_bounds.csv").rfind("rho_r,rho_w,lower_raw,lower,upper,p_star,f_min,ratio\n", 0) == 0);
  CHECK(awtc_bounds_grid_csv(rho_w, 2, 0.1, "/nonexistent/dir/x.csv", &rows) == AWTC_ERR_IO);
  std::remove("capi_bounds.csv");
}

TEST_CASE("code handles") {
  awtc_code* code = nullptr;
  REQUIRE(awtc_code_sample(10, 6, 2, 42, &code) == AWTC_OK);
  awtc_code_info info{};
  CHECK(awtc_code_get_info(code, &info) == AWTC_OK);
  CHECK(info.n == 10);
  CHECK(info.words == 64);
  CHECK(info.messages == 16);
  CHECK(info.seed == 42);

  uint64_t word = 0, encoded = 0;
  CHECK(awtc_code_word(code, 9, &word) == AWTC_OK);
  CHECK(awtc_code_encode(code, 2, 1, &encoded) == AWTC_OK);
  CHECK(encoded == word);
  std::size_t message = 99;
  CHECK(awtc_code_decode(code, word, &message) == AWTC_OK);
  CHECK(message == 2);
  CHECK(awtc_code_encode(code, 16, 0, &encoded) == AWTC_ERR_DOMAIN);
  CHECK(awtc_code_word(code, 64, &word) == AWTC_ERR_DOMAIN);
  CHECK(awtc_code_decode(code, uint64_t{1} << 10, &message) == AWTC_ERR_DOMAIN);

  std::size_t count = 0;
  uint64_t center = 0;
  CHECK(awtc_code_max_ball(code, 10, &count, &center) == AWTC_OK);
  CHECK(count == 64);
  CHECK(awtc_code_consistent_count(code, 0, 0, &count) == AWTC_OK);
  CHECK(count == 64);

  double bits = 0;
  CHECK(awtc_equivocation(code, 0, &bits) == AWTC_OK);
  CHECK(bits == 4.0);

  awtc_secrecy_summary summary{};
  CHECK(awtc_secrecy_report_csv(code, 2, 0, 0, 0, "capi_secrecy.csv", &summary) == AWTC_OK);
  CHECK(summary.exact == 1);
  CHECK(summary.delta <= summary.message_bits);
  CHECK(summary.counting_bound <= summary.delta + 1e-9);
  CHECK(slurp("capi_secrecy.csv").rfind("metric,support,value,exact_flag\n", 0) == 0);
  std::remove("capi_secrecy.csv");

  double pass = -1;
  CHECK(awtc_event_e0(code, 0, 0.1, 10, 1, &pass) == AWTC_OK);
  CHECK(pass == 1.0);

  CHECK(awtc_code_save(code, "capi_code.txt") == AWTC_OK);
  awtc_code* loaded = nullptr;
  CHECK(awtc_code_load("capi_code.txt", &loaded) == AWTC_OK);
  uint64_t again = 0;
  CHECK(awtc_code_word(loaded, 9, &again) == AWTC_OK);
  CHECK(again == word);
  awtc_code_free(loaded);
  std::remove("capi_code.txt");

  std::ofstream("capi_bad.txt") << "AWTC-CODEBOOK v1\nn=4 words=4 ell=0 seed=0\n1\n2\n";
  CHECK(awtc_code_load("capi_bad.txt", &loaded) == AWTC_ERR_FORMAT);
  CHECK(std::string(awtc_last_error()).find("missing") != std::string::npos);
  std::remove("capi_bad.txt");
  CHECK(awtc_code_load("/nonexistent/cb.txt", &loaded) == AWTC_ERR_IO);
  CHECK(awtc_code_sample(10, 6, 7, 1, &loaded) == AWTC_ERR_DOMAIN);

  awtc_code_free(code);
  awtc_code_free(nullptr);
}

TEST_CASE("code from explicit words") {
  const uint64_t words[] = {0x0, 0xf};
  awtc_code* code = nullptr;
  REQUIRE(awtc_code_from_words(4, words, 2, 0, &code) == AWTC_OK);
  std::size_t message = 9;
  CHECK(awtc_code_decode(code, 0x8, &message) == AWTC_OK);  // 0001
  CHECK(message == 0);
  awtc_code_free(code);
  const uint64_t bad[] = {0x10};
  CHECK(awtc_code_from_words(4, bad, 1, 0, &code) == AWTC_ERR_DOMAIN);
  CHECK(awtc_code_from_words(4, nullptr, 1, 0, &code) == AWTC_ERR_NULL_ARGUMENT);
}

TEST_CASE("experiments through the C interface") {
  awtc_config* config = nullptr;
  REQUIRE(awtc_config_new(&config) == AWTC_OK);
  CHECK(awtc_config_set(config, "n", "12") == AWTC_OK);
  CHECK(awtc_config_set(config, "trials", "200") == AWTC_OK);
  CHECK(awtc_config_set(config, "adversary", "greedy") == AWTC_OK);
  CHECK(awtc_config_set(config, "ell", "1") == AWTC_OK);
  CHECK(awtc_config_set(config, "wibble", "1") == AWTC_ERR_CONFIG);
  CHECK(awtc_config_set(config, nullptr, "1") == AWTC_ERR_NULL_ARGUMENT);
  CHECK(awtc_config_validate(config) == AWTC_OK);

  awtc_estimate first{}, second{};
  CHECK(awtc_run_reliability(config, nullptr, "capi_rel.csv", "capi_rel.jsonl", &first) == AWTC_OK);
  const std::string csv = slurp("capi_rel.csv"), jsonl = slurp("capi_rel.jsonl");
  CHECK(awtc_run_reliability(config, nullptr, "capi_rel.csv", "capi_rel.jsonl", &second) == AWTC_OK);
  CHECK(first.failures == second.failures);
  CHECK(first.trials == 200);
  CHECK(slurp("capi_rel.csv") == csv);
  CHECK(slurp("capi_rel.jsonl") == jsonl);
  std::remove("capi_rel.csv");
  std::remove("capi_rel.jsonl");

  awtc_code* code = nullptr;
  REQUIRE(awtc_build_code(config, &code) == AWTC_OK);
  awtc_reduction reduction{};
  CHECK(awtc_config_set(config, "xi", "0.1") == AWTC_OK);
  CHECK(awtc_run_reduction(config, code, nullptr, nullptr, &reduction) == AWTC_OK);
  CHECK(reduction.flip_prob == 0.0);
  CHECK(reduction.random_wtc.trials == 200);
  CHECK(reduction.eta_bec >= reduction.eta_awtc - 1e-12);

  std::size_t conflicts = 0;
  CHECK(awtc_config_set(config, "samples", "10") == AWTC_OK);
  CHECK(awtc_run_conflicts(config, code, nullptr, &conflicts) == AWTC_OK);

  CHECK(awtc_config_set(config, "adversary", "exhaustive") == AWTC_OK);
  CHECK(awtc_config_set(config, "max_enum", "5") == AWTC_OK);
  CHECK(awtc_run_reliability(config, code, nullptr, nullptr, &first) == AWTC_ERR_RESOURCE);

  CHECK(awtc_config_set(config, "trials", "0") == AWTC_OK);
  CHECK(awtc_config_validate(config) == AWTC_ERR_CONFIG);
  CHECK(awtc_config_load(config, "/nonexistent/awtc.conf") == AWTC_ERR_CONFIG);

  awtc_code_free(code);
  awtc_config_free(config);
}
