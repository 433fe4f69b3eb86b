#pragma once

#include "awtc/rng.hpp"
#include "awtc/view.hpp"
#include "awtc/word.hpp"

namespace awtc {

/// floor(fraction * n), tolerant of products that land a rounding error below
/// an integer (e.g. (1/7) * 14).
int budget_for(double fraction, int n);

View observe(const Word& x, const Support& support);

/// x XOR e. Throws BudgetError when wt(e) > budget: the harness must never
/// deliver an over-weight error.
Word apply_error(const Word& x, const Word& e, int budget);

/// Memoryless binary symmetric channel; flip_prob in [0, 1/2].
Word bsc_transmit(const Word& x, double flip_prob, Rng& rng);

/// Memoryless binary erasure channel seen as a view; erase_prob in [0, 1].
View bec_observe(const Word& x, double erase_prob, Rng& rng);

/// Uniformly random word of length n and exactly `weight` ones.
Word random_word_of_weight(int n, int weight, Rng& rng);

/// Uniformly random subset of [0, n) of the given size.
Support random_support(int n, int size, Rng& rng);

}  // namespace awtc
