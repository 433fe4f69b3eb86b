#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "awtc/error.hpp"
#include "awtc/harness.hpp"

namespace awtc {
namespace {

constexpr std::string_view kMagic = "AWTC-CODEBOOK";
constexpr std::string_view kVersion = "v1";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("codebook line " + std::to_string(line) + ": " + what);
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::uint64_t header_field(std::istringstream& fields, std::string_view name) {
  std::string token;
  if (!(fields >> token)) fail(2, "missing field " + std::string(name));
  const std::string prefix = std::string(name) + "=";
  if (token.rfind(prefix, 0) != 0) fail(2, "expected " + prefix + "<int>, got '" + token + "'");
  const std::string digits = token.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(2, "field " + std::string(name) + " is not a non-negative integer");
  try {
    return std::stoull(digits);
  } catch (const std::exception&) {
    fail(2, "field " + std::string(name) + " out of range");
  }
}

}  // namespace

void save_codebook(std::ostream& out, const BinnedCode& code) {
  const Codebook& base = code.base();
  out << kMagic << ' ' << kVersion << '\n';
  out << "n=" << base.n << " words=" << base.size() << " ell=" << code.ell() << " seed=" << base.seed << '\n';
  for (const Word& w : base.words) out << w.to_hex() << '\n';
}

void save_codebook(const std::filesystem::path& path, const BinnedCode& code) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write codebook " + path.string());
  save_codebook(out, code);
  if (!out) throw IoError("failed writing codebook " + path.string());
}

BinnedCode load_codebook(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) fail(1, "empty file");
  {
    std::istringstream magic(line);
    std::string tag, version, extra;
    magic >> tag >> version;
    if (tag != kMagic) fail(1, "not a codebook file (expected '" + std::string(kMagic) + " v1')");
    if (version != kVersion) fail(1, "unsupported version '" + version + "'");
    if (magic >> extra) fail(1, "trailing text after version");
  }
  if (!read_line(in, line)) fail(2, "missing header line");
  std::istringstream fields(line);
  const std::uint64_t n = header_field(fields, "n");
  const std::uint64_t count = header_field(fields, "words");
  const std::uint64_t ell = header_field(fields, "ell");
  const std::uint64_t seed = header_field(fields, "seed");
  if (std::string extra; fields >> extra) fail(2, "trailing text '" + extra + "'");
  if (n < 1 || n > static_cast<std::uint64_t>(Word::kMaxLength)) fail(2, "n must lie in [1, 64]");
  if (count < 1) fail(2, "words must be positive");
  if (ell >= 63 || (count & ((std::uint64_t{1} << ell) - 1)) != 0)
    fail(2, "2^ell does not divide the word count");

  Codebook base;
  base.n = static_cast<int>(n);
  base.seed = seed;
  base.words.reserve(count);
  std::size_t line_no = 2;
  while (base.words.size() < count) {
    if (!read_line(in, line)) {
      const std::uint64_t missing = count - base.words.size();
      fail(line_no + 1, "file ends after " + std::to_string(base.words.size()) + " of " + std::to_string(count) +
                            " words (" + std::to_string(missing) + " missing lines)");
    }
    ++line_no;
    try {
      base.words.push_back(Word::from_hex(line, base.n));
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
  }
  while (read_line(in, line)) {
    ++line_no;
    if (!line.empty()) fail(line_no, "more words than the header's count of " + std::to_string(count));
  }
  base.rate = std::log2(static_cast<double>(count)) / static_cast<double>(n);
  return BinnedCode(std::move(base), static_cast<int>(ell));
}

BinnedCode load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read codebook " + path.string());
  return load_codebook(in);
}

}  // namespace awtc
