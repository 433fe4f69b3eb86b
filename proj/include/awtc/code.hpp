#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "awtc/view.hpp"
#include "awtc/word.hpp"

namespace awtc {

/// Default ceiling on num_words * n for sample_codebook, in bits.
inline constexpr std::uint64_t kDefaultCodebookBitCap = std::uint64_t{1} << 33;

/// Ordered list of words in sampling order. Duplicates are allowed.
struct Codebook {
  int n = 0;
  std::vector<Word> words;
  double rate = 0.0;  // nominal rate of record; log2(size) / n for loaded books
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return words.size(); }
};

/// Number of codeword index bits for rate R at block length n: floor(R n).
/// Throws ConfigError when that is negative (no codeword).
int codebook_index_bits(double rate, int n);

/// i.i.d. uniform words from a seeded mt19937_64; bit-identical for identical
/// arguments. Throws ResourceError when num_words * n exceeds bit_cap.
Codebook sample_codebook(int n, std::size_t num_words, std::uint64_t seed,
                         std::uint64_t bit_cap = kDefaultCodebookBitCap);

/// The stochastic code C_Pi: bin i holds word indices [i 2^ell, (i+1) 2^ell).
class BinnedCode {
 public:
  /// Throws DomainError unless 2^ell divides the codebook size.
  BinnedCode(Codebook base, int ell);

  const Codebook& base() const noexcept { return base_; }
  int n() const noexcept { return base_.n; }
  int ell() const noexcept { return ell_; }
  std::size_t bin_size() const noexcept { return std::size_t{1} << ell_; }
  std::size_t num_messages() const noexcept { return base_.size() >> ell_; }
  /// log2 |C| as an exact integer (the codebook size is a power of two) or
  /// its real value otherwise.
  double rate_bits() const;
  /// log2 of the message count, R' n.
  double message_bits() const;
  std::size_t bin_of(std::size_t word_index) const noexcept { return word_index >> ell_; }
  std::span<const Word> bin(std::size_t message) const;

  std::size_t index_of(std::size_t message, std::size_t seed) const;
  const Word& encode(std::size_t message, std::size_t seed) const;

  /// Index of the nearest codeword, smallest index among equidistant ones.
  std::size_t nearest_index(const Word& received) const;
  /// Message of the nearest codeword.
  std::size_t decode_nearest(const Word& received) const { return bin_of(nearest_index(received)); }

 private:
  Codebook base_;
  int ell_ = 0;
};

BinnedCode bin_codebook(Codebook codebook, int ell);

enum class SearchMode { exhaustive, sampled };

struct BallOccupancy {
  std::size_t count = 0;
  Word center;
  bool exact = true;  // false: sampled centers, count is a lower bound
};

/// Largest number of codewords (with multiplicity) in any radius-r Hamming
/// ball. Exhaustive mode covers all 2^n centers and needs n <= 24; sampled
/// mode tries `samples` centers of the form codeword + random error.
BallOccupancy max_ball_occupancy(const Codebook& codebook, int radius,
                                 SearchMode mode = SearchMode::exhaustive,
                                 std::size_t samples = 0, std::uint64_t seed = 0);

/// Indices (ascending) of the words that agree with the view on its support.
std::vector<std::size_t> consistent_subset(std::span<const Word> words, const View& view);

}  // namespace awtc
