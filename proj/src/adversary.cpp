#include "awtc/adversary.hpp"

#include <bit>

#include "awtc/channel.hpp"
#include "awtc/error.hpp"

namespace awtc {
namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

void check_write_budget(int n, int write_budget) {
  if (write_budget < 0 || write_budget > n) throw BudgetError("write budget out of range");
}

// Nearest codeword whose bin differs from `bin`, smallest index on ties.
// Returns code.base().size() when every codeword shares the bin.
std::size_t nearest_rival(const BinnedCode& code, const Word& x, std::size_t bin) {
  const auto& words = code.base().words;
  std::size_t best = words.size();
  int best_distance = Word::kMaxLength + 1;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (code.bin_of(i) == bin) continue;
    const int d = hamming_distance(words[i], x);
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return best;
}

// Up to `budget` coordinates from `toward`, those in `preferred` first, each
// group in ascending coordinate order.
std::uint64_t take_bits(std::uint64_t toward, std::uint64_t preferred, int budget) {
  std::uint64_t out = 0;
  for (std::uint64_t group : {toward & preferred, toward & ~preferred}) {
    for (std::uint64_t m = group; m != 0 && std::popcount(out) < budget; m &= m - 1) out |= m & (~m + 1);
  }
  return out;
}

}  // namespace

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "random") return StrategyKind::oblivious_random;
  if (name == "greedy") return StrategyKind::within_view_greedy;
  if (name == "exhaustive") return StrategyKind::within_view_exhaustive;
  if (name == "omniscient") return StrategyKind::full_view_midpoint;
  throw ConfigError("unknown adversary '" + std::string(name) + "' (random|greedy|exhaustive|omniscient)");
}

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::oblivious_random: return "random";
    case StrategyKind::within_view_greedy: return "greedy";
    case StrategyKind::within_view_exhaustive: return "exhaustive";
    case StrategyKind::full_view_midpoint: return "omniscient";
  }
  return "unknown";
}

Support choose_support(const Strategy& strategy, int n, int read_budget, Rng& rng) {
  if (read_budget < 0 || read_budget > n) throw BudgetError("read budget out of range");
  switch (strategy.kind) {
    case StrategyKind::oblivious_random: return random_support(n, read_budget, rng);
    case StrategyKind::within_view_greedy:
    case StrategyKind::within_view_exhaustive: return Support::first(n, read_budget);
    case StrategyKind::full_view_midpoint: return Support::full(n);
  }
  return Support::first(n, read_budget);
}

Word choose_error(const Strategy& strategy, const BinnedCode& code, const View& view, int write_budget,
                  Rng& rng) {
  const int n = code.n();
  if (view.block_length() != n) throw DomainError("view length does not match the code");
  check_write_budget(n, write_budget);
  if (write_budget == 0) return Word::zeros(n);

  switch (strategy.kind) {
    case StrategyKind::oblivious_random: return random_word_of_weight(n, write_budget, rng);

    case StrategyKind::within_view_greedy: {
      const auto consistent = consistent_subset(code.base().words, view);
      if (consistent.empty()) return Word::zeros(n);
      const std::size_t guess = consistent[uniform_below(rng, consistent.size())];
      const Word& x = code.base().words[guess];
      const std::size_t rival = nearest_rival(code, x, code.bin_of(guess));
      if (rival == code.base().size()) return Word::zeros(n);
      const std::uint64_t diff = x.bits() ^ code.base().words[rival].bits();
      return Word(n, take_bits(diff, ~view.support().mask() & Word::mask(n), write_budget));
    }

    case StrategyKind::within_view_exhaustive:
      return exhaustive_error_search(code, view, write_budget, strategy.caps).best.error;

    case StrategyKind::full_view_midpoint:
      throw ConfigError("the omniscient baseline needs the transmitted word; use choose_error_omniscient");
  }
  return Word::zeros(n);
}

Word choose_error_omniscient(const BinnedCode& code, std::size_t transmitted_index, int write_budget) {
  const int n = code.n();
  check_write_budget(n, write_budget);
  if (transmitted_index >= code.base().size()) throw DomainError("transmitted index out of range");
  const Word& x = code.base().words[transmitted_index];
  const std::size_t rival = nearest_rival(code, x, code.bin_of(transmitted_index));
  if (rival == code.base().size() || write_budget == 0) return Word::zeros(n);
  const std::uint64_t diff = x.bits() ^ code.base().words[rival].bits();
  return Word(n, take_bits(diff, diff, write_budget));
}

double posterior_error_probability(const BinnedCode& code, std::span<const std::size_t> consistent,
                                   const Word& error) {
  if (consistent.empty()) return 0.0;
  std::size_t failures = 0;
  for (std::size_t index : consistent) {
    const Word received = code.base().words[index] ^ error;
    if (code.decode_nearest(received) != code.bin_of(index)) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(consistent.size());
}

ExhaustiveSearch exhaustive_error_search(const BinnedCode& code, const View& view, int write_budget,
                                         const SearchCaps& caps, bool keep_table) {
  const int n = code.n();
  if (view.block_length() != n) throw DomainError("view length does not match the code");
  check_write_budget(n, write_budget);
  if (n > caps.max_n)
    throw ResourceError("exhaustive adversary is capped at n = " + std::to_string(caps.max_n));
  if (write_budget > caps.max_budget)
    throw ResourceError("exhaustive adversary is capped at write budget " + std::to_string(caps.max_budget));
  std::uint64_t candidates = 0;
  for (int w = 0; w <= write_budget; ++w) candidates += binomial(n, w);
  if (candidates > caps.max_enum)
    throw ResourceError(std::to_string(candidates) + " candidate errors exceed max-enum " +
                        std::to_string(caps.max_enum));

  const auto consistent = consistent_subset(code.base().words, view);
  ExhaustiveSearch out;
  out.best = {Word::zeros(n), posterior_error_probability(code, consistent, Word::zeros(n))};
  if (keep_table) {
    out.table.reserve(candidates);
    out.table.push_back(out.best);
  }
  for (int w = 1; w <= write_budget; ++w) {
    std::uint64_t e = (std::uint64_t{1} << w) - 1;
    const std::uint64_t limit = n >= 64 ? 0 : std::uint64_t{1} << n;
    while (n >= 64 || e < limit) {
      const Word error(n, e);
      const double score = posterior_error_probability(code, consistent, error);
      if (keep_table) out.table.push_back({error, score});
      if (score > out.best.posterior_error ||
          (score == out.best.posterior_error && e < out.best.error.bits()))
        out.best = {error, score};
      const std::uint64_t c = e & (~e + 1);
      const std::uint64_t r = e + c;
      if (r == 0) break;
      e = (((r ^ e) >> 2) / c) | r;
    }
  }
  return out;
}

}  // namespace awtc
