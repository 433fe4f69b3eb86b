#include "awtc/code.hpp"

#include <bit>
#include <cmath>

#include "awtc/channel.hpp"
#include "awtc/error.hpp"
#include "awtc/rng.hpp"

namespace awtc {

int codebook_index_bits(double rate, int n) {
  if (n < 1) throw ConfigError("block length must be positive");
  // Guard against R n landing a hair below an integer through rounding.
  const double bits = std::floor(rate * n + 1e-9);
  if (bits < 0) throw ConfigError("rate yields no codeword (floor(R n) < 0)");
  if (bits > 40) throw ResourceError("codebook of 2^" + std::to_string(bits) + " words");
  return static_cast<int>(bits);
}

Codebook sample_codebook(int n, std::size_t num_words, std::uint64_t seed, std::uint64_t bit_cap) {
  if (n < 1 || n > Word::kMaxLength) throw DomainError("block length must lie in [1, 64]");
  if (num_words < 1) throw DomainError("codebook needs at least one word");
  if (num_words > bit_cap / static_cast<std::uint64_t>(n))
    throw ResourceError("codebook of " + std::to_string(num_words) + " words of length " +
                        std::to_string(n) + " exceeds the memory cap");
  Codebook out;
  out.n = n;
  out.seed = seed;
  out.rate = std::log2(static_cast<double>(num_words)) / n;
  out.words.reserve(num_words);
  Rng rng(seed);
  const std::uint64_t mask = Word::mask(n);
  for (std::size_t i = 0; i < num_words; ++i) out.words.emplace_back(n, rng() & mask);
  return out;
}

BinnedCode::BinnedCode(Codebook base, int ell) : base_(std::move(base)), ell_(ell) {
  if (ell < 0 || ell >= 63) throw DomainError("seed length ell out of range");
  const std::size_t size = base_.size();
  if (size == 0 || (size & (bin_size() - 1)) != 0)
    throw DomainError("2^ell = " + std::to_string(bin_size()) + " does not divide codebook size " +
                      std::to_string(size));
}

double BinnedCode::rate_bits() const {
  const std::size_t size = base_.size();
  if (std::has_single_bit(size)) return static_cast<double>(std::countr_zero(size));
  return std::log2(static_cast<double>(size));
}

double BinnedCode::message_bits() const { return rate_bits() - ell_; }

std::span<const Word> BinnedCode::bin(std::size_t message) const {
  if (message >= num_messages()) throw DomainError("message out of range");
  return std::span<const Word>(base_.words).subspan(message << ell_, bin_size());
}

std::size_t BinnedCode::index_of(std::size_t message, std::size_t seed) const {
  if (message >= num_messages()) throw DomainError("message out of range");
  if (seed >= bin_size()) throw DomainError("seed r out of range");
  return (message << ell_) + seed;
}

const Word& BinnedCode::encode(std::size_t message, std::size_t seed) const {
  return base_.words[index_of(message, seed)];
}

std::size_t BinnedCode::nearest_index(const Word& received) const {
  if (received.size() != base_.n) throw DomainError("received word has the wrong length");
  std::size_t best = 0;
  int best_distance = Word::kMaxLength + 1;
  const std::uint64_t y = received.bits();
  for (std::size_t i = 0; i < base_.words.size(); ++i) {
    const int d = std::popcount(base_.words[i].bits() ^ y);
    if (d < best_distance) {
      best_distance = d;
      best = i;
      if (d == 0) break;
    }
  }
  return best;
}

BinnedCode bin_codebook(Codebook codebook, int ell) { return BinnedCode(std::move(codebook), ell); }

BallOccupancy max_ball_occupancy(const Codebook& codebook, int radius, SearchMode mode,
                                 std::size_t samples, std::uint64_t seed) {
  const int n = codebook.n;
  if (radius < 0 || radius > n) throw DomainError("radius must lie in [0, n]");
  if (codebook.words.empty()) throw DomainError("empty codebook");

  if (mode == SearchMode::sampled) {
    if (samples == 0) throw DomainError("sampled mode needs at least one sample");
    Rng rng(seed);
    BallOccupancy best{0, Word::zeros(n), false};
    for (std::size_t s = 0; s < samples; ++s) {
      const Word& base = codebook.words[uniform_below(rng, codebook.size())];
      const int weight = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(radius) + 1));
      const Word center = base ^ random_word_of_weight(n, weight, rng);
      std::size_t count = 0;
      for (const Word& w : codebook.words)
        if (std::popcount(w.bits() ^ center.bits()) <= radius) ++count;
      if (count > best.count || (count == best.count && center.bits() < best.center.bits()))
        best = {count, center, false};
    }
    return best;
  }

  if (n > 24) throw ResourceError("exhaustive ball occupancy is capped at n = 24");
  // Scatter each codeword's ball into a per-center counter.
  std::vector<std::uint32_t> counts(std::size_t{1} << n, 0);
  for (const Word& w : codebook.words) {
    const std::uint64_t x = w.bits();
    ++counts[x];
    for (int weight = 1; weight <= radius; ++weight) {
      // Gosper's hack walks all n-bit masks of this weight.
      std::uint64_t e = (std::uint64_t{1} << weight) - 1;
      const std::uint64_t limit = std::uint64_t{1} << n;
      while (e < limit) {
        ++counts[x ^ e];
        const std::uint64_t c = e & (~e + 1);
        const std::uint64_t r = e + c;
        e = (((r ^ e) >> 2) / c) | r;
      }
    }
  }
  std::size_t best_center = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[best_center]) best_center = c;
  return {counts[best_center], Word(n, best_center), true};
}

std::vector<std::size_t> consistent_subset(std::span<const Word> words, const View& view) {
  std::vector<std::size_t> out;
  const std::uint64_t mask = view.support().mask();
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() != view.block_length()) throw DomainError("consistent_subset: length mismatch");
    if ((words[i].bits() & mask) == view.symbols()) out.push_back(i);
  }
  return out;
}

}  // namespace awtc
