#include "awtc/channel.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "awtc/error.hpp"

namespace awtc {

Support::Support(int n, std::uint64_t mask) : mask_(mask), n_(n) {
  if (n < 0 || n > Word::kMaxLength) throw DomainError("block length must lie in [0, 64]");
  if ((mask & ~Word::mask(n)) != 0) throw DomainError("support coordinate out of range");
}

Support Support::from_indices(int n, std::span<const int> indices) {
  std::uint64_t mask = 0;
  for (int i : indices) {
    if (i < 0 || i >= n) throw DomainError("support coordinate " + std::to_string(i) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (mask & bit) throw DomainError("repeated support coordinate " + std::to_string(i));
    mask |= bit;
  }
  return Support(n, mask);
}

Support Support::first(int n, int count) {
  if (count < 0 || count > n) throw DomainError("support size out of range");
  return Support(n, Word::mask(count));
}

int Support::size() const noexcept { return std::popcount(mask_); }

std::vector<int> Support::indices() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string Support::to_string() const {
  std::string out;
  for (int i : indices()) {
    if (!out.empty()) out += ';';
    out += std::to_string(i + 1);
  }
  return out;
}

View::View(Support support, std::uint64_t symbols) : support_(support), symbols_(symbols) {
  if ((symbols & ~support_.mask()) != 0) throw DomainError("view symbols outside the support");
}

std::optional<bool> View::at(int i) const noexcept {
  if (!support_.contains(i)) return std::nullopt;
  return ((symbols_ >> i) & 1u) != 0;
}

bool View::consistent_with(const Word& word) const {
  if (word.size() != block_length()) throw DomainError("view/word length mismatch");
  return (word.bits() & support_.mask()) == symbols_;
}

std::string View::to_string() const {
  std::string out(static_cast<std::size_t>(block_length()), '?');
  for (int i : support_.indices()) out[static_cast<std::size_t>(i)] = ((symbols_ >> i) & 1u) ? '1' : '0';
  return out;
}

int budget_for(double fraction, int n) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("fraction must lie in [0, 1]");
  return static_cast<int>(std::floor(fraction * n + 1e-9));
}

View observe(const Word& x, const Support& support) {
  if (support.block_length() != x.size()) throw DomainError("observe: support/word length mismatch");
  return View(support, x.bits() & support.mask());
}

Word apply_error(const Word& x, const Word& e, int budget) {
  if (e.weight() > budget)
    throw BudgetError("error weight " + std::to_string(e.weight()) + " exceeds budget " +
                      std::to_string(budget));
  return x ^ e;
}

Word bsc_transmit(const Word& x, double flip_prob, Rng& rng) {
  if (!(flip_prob >= 0.0 && flip_prob <= 0.5)) throw DomainError("BSC flip probability must lie in [0, 1/2]");
  std::uint64_t flips = 0;
  for (int i = 0; i < x.size(); ++i)
    if (bernoulli(rng, flip_prob)) flips |= std::uint64_t{1} << i;
  return Word(x.size(), x.bits() ^ flips);
}

View bec_observe(const Word& x, double erase_prob, Rng& rng) {
  if (!(erase_prob >= 0.0 && erase_prob <= 1.0)) throw DomainError("BEC erasure probability must lie in [0, 1]");
  std::uint64_t kept = 0;
  for (int i = 0; i < x.size(); ++i)
    if (!bernoulli(rng, erase_prob)) kept |= std::uint64_t{1} << i;
  return observe(x, Support(x.size(), kept));
}

Support random_support(int n, int size, Rng& rng) {
  if (n < 0 || n > Word::kMaxLength) throw DomainError("block length must lie in [0, 64]");
  if (size < 0 || size > n) throw DomainError("support size out of range");
  // Partial Fisher-Yates.
  std::array<int, Word::kMaxLength> positions{};
  for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i;
  std::uint64_t mask = 0;
  for (int k = 0; k < size; ++k) {
    const auto j = k + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - k)));
    std::swap(positions[static_cast<std::size_t>(k)], positions[static_cast<std::size_t>(j)]);
    mask |= std::uint64_t{1} << positions[static_cast<std::size_t>(k)];
  }
  return Support(n, mask);
}

Word random_word_of_weight(int n, int weight, Rng& rng) {
  return Word(n, random_support(n, weight, rng).mask());
}

}  // namespace awtc
