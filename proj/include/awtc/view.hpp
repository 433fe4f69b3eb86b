#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awtc/word.hpp"

namespace awtc {

/// A coordinate set over [0, n), zero-based and stored as a bit mask.
/// Text and file outputs print coordinates one-based.
class Support {
 public:
  Support() = default;
  Support(int n, std::uint64_t mask);
  /// Throws DomainError on an out-of-range or repeated coordinate.
  static Support from_indices(int n, std::span<const int> indices);
  static Support first(int n, int count);
  static Support full(int n) { return first(n, n); }

  int block_length() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int size() const noexcept;
  bool contains(int i) const noexcept { return (mask_ >> i) & 1u; }
  std::vector<int> indices() const;
  /// "1;3;4" (one-based, ';'-separated; empty for the empty set).
  std::string to_string() const;

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::uint64_t mask_ = 0;
  int n_ = 0;
};

/// The adversary's observation: an element of {0,1,?}^n revealing a word on
/// its support and "?" elsewhere.
class View {
 public:
  View() = default;
  View(Support support, std::uint64_t symbols);

  int block_length() const noexcept { return support_.block_length(); }
  const Support& support() const noexcept { return support_; }
  /// Observed bits, placed at their coordinates; zero outside the support.
  std::uint64_t symbols() const noexcept { return symbols_; }
  std::optional<bool> at(int i) const noexcept;

  /// x_i = v_i wherever v_i != ?. Throws DomainError on length mismatch.
  bool consistent_with(const Word& word) const;

  /// e.g. "1?1?" with coordinate 1 first.
  std::string to_string() const;

  friend bool operator==(const View&, const View&) = default;

 private:
  Support support_;
  std::uint64_t symbols_ = 0;
};

}  // namespace awtc
