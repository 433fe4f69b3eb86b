#include <doctest.h>

#include <vector>

#include "awtc/adversary.hpp"
#include "awtc/channel.hpp"
#include "awtc/error.hpp"
#include "oracles.hpp"

using namespace awtc;

namespace {

const Strategy kRandom{StrategyKind::oblivious_random, {}};
const Strategy kGreedy{StrategyKind::within_view_greedy, {}};
const Strategy kExhaustive{StrategyKind::within_view_exhaustive, {}};
const Strategy kOmniscient{StrategyKind::full_view_midpoint, {}};

}  // namespace

TEST_CASE("strategy names") {
  for (const char* name : {"random", "greedy", "exhaustive", "omniscient"})
    CHECK(strategy_name(parse_strategy_kind(name)) == name);
  CHECK_THROWS_AS(parse_strategy_kind("midpoint"), ConfigError);
  CHECK_FALSE(kOmniscient.respects_view_constraint());
  CHECK(kExhaustive.respects_view_constraint());
}

TEST_CASE("choose_support") {
  Rng rng(1);
  for (const Strategy& s : {kRandom, kGreedy, kExhaustive}) {
    CHECK(choose_support(s, 12, 0, rng).size() == 0);
    CHECK(choose_support(s, 12, 12, rng) == Support::full(12));
    CHECK(choose_support(s, 12, 5, rng).size() == 5);
    CHECK_THROWS_AS(choose_support(s, 12, 13, rng), BudgetError);
  }
  CHECK(choose_support(kOmniscient, 12, 3, rng) == Support::full(12));
  CHECK(choose_support(kGreedy, 12, 3, rng) == Support::first(12, 3));
  Rng a(42), b(42);
  CHECK(choose_support(kRandom, 20, 7, a) == choose_support(kRandom, 20, 7, b));
}

TEST_CASE("zero write budget yields the zero word") {
  const BinnedCode code(sample_codebook(10, 32, 3), 1);
  const View v = observe(code.base().words[4], Support::first(10, 3));
  Rng rng(9);
  for (const Strategy& s : {kRandom, kGreedy, kExhaustive}) CHECK(choose_error(s, code, v, 0, rng) == Word::zeros(10));
  CHECK(choose_error_omniscient(code, 4, 0) == Word::zeros(10));
  CHECK_THROWS_AS(choose_error(kOmniscient, code, v, 1, rng), ConfigError);
}

TEST_CASE("exhaustive adversary against a distance-6 code") {
  Codebook cb;
  cb.n = 6;
  cb.words = {Word::from_string("000000"), Word::from_string("111111")};
  const BinnedCode code(cb, 0);
  const auto search = exhaustive_error_search(code, observe(cb.words[0], Support(6, 0)), 1, {}, true);
  CHECK(search.best.posterior_error == 0.0);
  CHECK(search.best.error == Word::zeros(6));
  CHECK(search.table.size() == 7);
  for (const auto& row : search.table) CHECK(row.posterior_error == 0.0);
}

TEST_CASE("exhaustive adversary matches an independent enumeration") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Codebook cb = sample_codebook(10, 32, seed);
    const BinnedCode code(cb, 1);
    const auto raw = oracle::raw_words(cb);
    Rng rng(seed * 31);
    const std::size_t sent = uniform_below(rng, cb.size());
    const View view = observe(cb.words[sent], random_support(10, 3, rng));
    const auto search = exhaustive_error_search(code, view, 2, {}, true);
    const auto brute = oracle::best_error(raw, 10, 1, view.support().mask(), view.symbols(), 2);
    CHECK(search.best.posterior_error == doctest::Approx(brute.score).epsilon(1e-12));
    CHECK(search.best.error.bits() == brute.error);
    CHECK(search.table.size() == brute.table.size());
    for (const auto& row : search.table) {
      CHECK(row.error.weight() <= 2);
      CHECK(row.posterior_error <= search.best.posterior_error);
      CHECK(row.posterior_error == doctest::Approx(brute.table.at(row.error.bits())).epsilon(1e-12));
    }
    CHECK(choose_error(kExhaustive, code, view, 2, rng) == search.best.error);
  }
}

TEST_CASE("exhaustive caps") {
  const BinnedCode big(sample_codebook(15, 8, 1), 0);
  CHECK_THROWS_AS(exhaustive_error_search(big, observe(big.base().words[0], Support(15, 0)), 1, {}), ResourceError);
  const BinnedCode code(sample_codebook(12, 8, 1), 0);
  const View v = observe(code.base().words[0], Support(12, 0));
  CHECK_THROWS_AS(exhaustive_error_search(code, v, 5, {}), ResourceError);
  CHECK_THROWS_AS(exhaustive_error_search(code, v, 3, {10, 14, 4}), ResourceError);
  CHECK_NOTHROW(exhaustive_error_search(code, v, 3, {299, 14, 4}));
}

TEST_CASE("information firewall and weight budget") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const BinnedCode code(sample_codebook(12, 64, seed), 2);
    const auto& words = code.base().words;
    Rng pick(seed);
    for (int t = 0; t < 20; ++t) {
      const View view = observe(words[uniform_below(pick, words.size())], Support::first(12, 3));
      const auto consistent = consistent_subset(words, view);
      REQUIRE_FALSE(consistent.empty());
      // the views produced by two different consistent transmissions
      const View va = observe(words[consistent.front()], view.support());
      const View vb = observe(words[consistent.back()], view.support());
      REQUIRE(va == vb);
      for (const Strategy& s : {kRandom, kGreedy, kExhaustive}) {
        Rng a(seed * 1000 + t), b(seed * 1000 + t);
        const Word ea = choose_error(s, code, va, 2, a);
        const Word eb = choose_error(s, code, vb, 2, b);
        CHECK(ea == eb);
        CHECK(ea.weight() <= 2);
      }
    }
  }
}

TEST_CASE("omniscient baseline moves toward the nearest rival") {
  Codebook cb;
  cb.n = 8;
  cb.words = {Word::from_string("00000000"), Word::from_string("00000000"), Word::from_string("11110000"),
              Word::from_string("11111111")};
  const BinnedCode code(cb, 1);
  // index 0's bin partner is a duplicate; the rival sits at distance 4
  const Word e = choose_error_omniscient(code, 0, 2);
  CHECK(e == Word::from_string("11000000"));
  CHECK(choose_error_omniscient(code, 0, 8) == Word::from_string("11110000"));
  CHECK_THROWS_AS(choose_error_omniscient(code, 4, 1), DomainError);

  const BinnedCode single(cb, 2);
  CHECK(choose_error_omniscient(single, 0, 3) == Word::zeros(8));
}

TEST_CASE("posterior error probability") {
  Codebook cb;
  cb.n = 4;
  cb.words = {Word::from_string("0000"), Word::from_string("0011"), Word::from_string("1100"),
              Word::from_string("1111")};
  const BinnedCode code(cb, 0);
  const std::vector<std::size_t> all{0, 1, 2, 3};
  CHECK(posterior_error_probability(code, all, Word::zeros(4)) == 0.0);
  // one flip on the first coordinate: 1000 decodes to 0000 (index 0, tie with 1100) and so on
  const double p = posterior_error_probability(code, all, Word::from_string("1000"));
  double expected = 0;
  for (std::size_t i : all) {
    const auto raw = oracle::raw_words(cb);
    expected += oracle::nearest(raw, raw[i] ^ 0x1, 4) != i ? 0.25 : 0.0;
  }
  CHECK(p == expected);
  CHECK(posterior_error_probability(code, {}, Word::from_string("1000")) == 0.0);
}
