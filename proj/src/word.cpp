#include "awtc/word.hpp"

#include "awtc/error.hpp"

namespace awtc {

Word::Word(int n, std::uint64_t bits) : bits_(bits), n_(n) {
  if (n < 0 || n > kMaxLength) throw DomainError("word length must lie in [0, 64]");
  if ((bits & ~mask(n)) != 0) throw DomainError("word has bits beyond its length");
}

Word Word::from_string(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxLength))
    throw DomainError("word longer than 64 coordinates");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (text[i] != '0')
      throw DomainError("word string may contain only '0' and '1'");
  }
  return Word(static_cast<int>(text.size()), bits);
}

Word Word::from_hex(std::string_view hex, int n) {
  if (n < 1 || n > kMaxLength) throw DomainError("word length must lie in [1, 64]");
  const std::size_t digits = static_cast<std::size_t>((n + 3) / 4);
  if (hex.size() != digits)
    throw FormatError("expected " + std::to_string(digits) + " hex digits, got " +
                      std::to_string(hex.size()));
  std::uint64_t bits = 0;
  for (char c : hex) {
    int nibble;
    if (c >= '0' && c <= '9')
      nibble = c - '0';
    else if (c >= 'a' && c <= 'f')
      nibble = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      nibble = c - 'A' + 10;
    else
      throw FormatError(std::string("invalid hex digit '") + c + "'");
    bits = (bits << 4) | static_cast<std::uint64_t>(nibble);
  }
  if ((bits & ~mask(n)) != 0) throw FormatError("hex word has bits beyond length " + std::to_string(n));
  return Word(n, bits);
}

Word Word::operator^(const Word& other) const {
  if (n_ != other.n_) throw DomainError("word length mismatch");
  return Word(n_, bits_ ^ other.bits_, Unchecked{});
}

std::string Word::to_string() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if (bit(i)) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

std::string Word::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = (n_ + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int d = 0; d < digits; ++d)
    out[static_cast<std::size_t>(digits - 1 - d)] = kDigits[(bits_ >> (4 * d)) & 0xf];
  return out;
}

int hamming_distance(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw DomainError("hamming_distance: length mismatch");
  return std::popcount(a.bits() ^ b.bits());
}

}  // namespace awtc
