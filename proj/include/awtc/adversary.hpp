#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "awtc/code.hpp"
#include "awtc/rng.hpp"
#include "awtc/view.hpp"

namespace awtc {

enum class StrategyKind {
  oblivious_random,        // uniform support, uniform weight-budget error
  within_view_greedy,      // pushes a posterior sample toward its nearest rival
  within_view_exhaustive,  // maximizes exact posterior decoding error
  full_view_midpoint,      // omniscient baseline; NOT an AWTC adversary
};

struct SearchCaps {
  std::size_t max_enum = 1u << 16;  // candidate error words per trial
  int max_n = 14;
  int max_budget = 4;
};

struct Strategy {
  StrategyKind kind = StrategyKind::oblivious_random;
  SearchCaps caps;

  /// True for every kind whose error depends on the code and view only.
  bool respects_view_constraint() const noexcept { return kind != StrategyKind::full_view_midpoint; }
};

/// CLI names: random | greedy | exhaustive | omniscient.
StrategyKind parse_strategy_kind(std::string_view name);
std::string_view strategy_name(StrategyKind kind);

/// Exactly read_budget coordinates. The greedy and exhaustive kinds read the
/// first read_budget coordinates (i.i.d. codebooks are coordinate-exchangeable);
/// the omniscient baseline reads everything.
Support choose_support(const Strategy& strategy, int n, int read_budget, Rng& rng);

/// Error selection for view-limited adversaries. The transmitted word is not
/// an argument; the view is all the adversary learns about it. Throws
/// ConfigError for the omniscient kind, which has its own entry point.
Word choose_error(const Strategy& strategy, const BinnedCode& code, const View& view, int write_budget,
                  Rng& rng);

/// Omniscient baseline: flips up to write_budget bits of the transmitted word
/// toward its nearest codeword in a different bin (lowest coordinates first).
Word choose_error_omniscient(const BinnedCode& code, std::size_t transmitted_index, int write_budget);

struct ErrorScore {
  Word error;
  double posterior_error = 0.0;
};

struct ExhaustiveSearch {
  ErrorScore best;
  std::vector<ErrorScore> table;  // every candidate, filled when requested
};

/// Pr over x uniform in the consistent indices that nearest-neighbor decoding
/// of x XOR e lands in a different bin than x.
double posterior_error_probability(const BinnedCode& code, std::span<const std::size_t> consistent,
                                   const Word& error);

/// Enumerates every error word of weight <= write_budget and keeps the one with
/// the largest posterior error, ties to the numerically smallest word (the
/// lexicographically smallest hex form). Throws ResourceError past the caps.
ExhaustiveSearch exhaustive_error_search(const BinnedCode& code, const View& view, int write_budget,
                                         const SearchCaps& caps, bool keep_table = false);

}  // namespace awtc
