#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace awtc {

/// Fixed-length binary string of at most 64 coordinates, packed into one
/// machine word. Coordinate 1 is the least-significant bit; that bit order is
/// part of the codebook file contract.
class Word {
 public:
  static constexpr int kMaxLength = 64;

  Word() = default;
  /// Throws DomainError if n is outside [0, 64] or bits has bits at or above n.
  Word(int n, std::uint64_t bits);

  static Word zeros(int n) { return Word(n, 0); }
  static Word ones(int n) { return Word(n, mask(n)); }
  /// "0110" with coordinate 1 first.
  static Word from_string(std::string_view text);
  /// Lowercase or uppercase hex, most-significant nibble first, exactly
  /// ceil(n/4) digits.
  static Word from_hex(std::string_view hex, int n);

  int size() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  /// Zero-based coordinate access.
  bool bit(int i) const noexcept { return (bits_ >> i) & 1u; }
  int weight() const noexcept { return std::popcount(bits_); }

  Word with_flipped(int i) const noexcept { return Word(n_, bits_ ^ (std::uint64_t{1} << i), {}); }

  /// Throws DomainError on length mismatch.
  Word operator^(const Word& other) const;

  std::string to_string() const;
  std::string to_hex() const;

  friend bool operator==(const Word&, const Word&) = default;

  static constexpr std::uint64_t mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

 private:
  struct Unchecked {};
  Word(int n, std::uint64_t bits, Unchecked) noexcept : bits_(bits), n_(n) {}

  std::uint64_t bits_ = 0;
  int n_ = 0;
};

/// Number of differing coordinates. Throws DomainError on length mismatch.
int hamming_distance(const Word& a, const Word& b);

}  // namespace awtc
