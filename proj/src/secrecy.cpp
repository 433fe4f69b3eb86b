#include "awtc/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "awtc/channel.hpp"
#include "awtc/error.hpp"
#include "awtc/format.hpp"
#include "awtc/parallel.hpp"
#include "awtc/rng.hpp"

namespace awtc {
namespace {

// c log2 c, with 0 log 0 = 0.
double xlog2x(std::size_t c) {
  return c == 0 ? 0.0 : static_cast<double>(c) * std::log2(static_cast<double>(c));
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (out > cap) return cap + 1;
  }
  return out;
}

void check_code(const BinnedCode& code, const SecrecyCaps& caps) {
  if (code.base().size() > caps.max_words)
    throw ResourceError("exact secrecy metrics are capped at " + std::to_string(caps.max_words) + " codewords");
}

// (restricted word, bin) pairs for every codeword, sorted.
std::vector<std::pair<std::uint64_t, std::size_t>> view_bin_pairs(const BinnedCode& code, std::uint64_t mask) {
  const auto& words = code.base().words;
  std::vector<std::pair<std::uint64_t, std::size_t>> pairs(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) pairs[i] = {words[i].bits() & mask, code.bin_of(i)};
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Support> supports_for(int n, int k, SearchMode mode, std::size_t samples, std::uint64_t seed,
                                  const SecrecyCaps& caps) {
  if (k < 0 || k > n) throw DomainError("read budget out of range");
  if (mode == SearchMode::exhaustive) return enumerate_supports(n, k, caps.max_supports);
  if (samples == 0) throw DomainError("sampled mode needs at least one sample");
  std::vector<Support> out;
  out.reserve(samples);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) out.push_back(random_support(n, k, rng));
  return out;
}

// Sum over distinct restricted values v of (c_v / m) log2(c_v 2^k / m).
double divergence_from_keys(std::vector<std::uint64_t>& keys, int k) {
  std::sort(keys.begin(), keys.end());
  const double m = static_cast<double>(keys.size());
  double total = 0.0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const double p = static_cast<double>(j - i) / m;
    total += p * (std::log2(p) + k);
    i = j;
  }
  return std::max(total, 0.0);
}

struct SupportStats {
  double equivocation = 0.0;
  std::size_t l_max = 0;
  std::uint64_t worst_key = 0;
  std::size_t worst_bin = 0;
};

SupportStats support_stats(const BinnedCode& code, const Support& support) {
  const auto pairs = view_bin_pairs(code, support.mask());
  SupportStats out;
  double view_term = 0.0;
  double joint_term = 0.0;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) {
      std::size_t k = j;
      while (k < pairs.size() && pairs[k] == pairs[j]) ++k;
      const std::size_t c = k - j;
      joint_term += xlog2x(c);
      if (c > out.l_max) {
        out.l_max = c;
        out.worst_key = pairs[j].first;
        out.worst_bin = pairs[j].second;
      }
      j = k;
    }
    view_term += xlog2x(j - i);
    i = j;
  }
  // H(S|V) = (1/N) (sum_v c_v log c_v - sum_{v,b} c_vb log c_vb)
  out.equivocation = std::max((view_term - joint_term) / static_cast<double>(pairs.size()), 0.0);
  return out;
}

void check_support_size(const Support& support, int cap) {
  if (support.size() > cap)
    throw ResourceError("support of size " + std::to_string(support.size()) + " exceeds the cap of " +
                        std::to_string(cap));
}

}  // namespace

std::vector<Support> enumerate_supports(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n || n > Word::kMaxLength) throw DomainError("support size out of range");
  const std::uint64_t total = binomial_capped(n, k, cap);
  if (total > cap)
    throw ResourceError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") supports exceed the cap of " +
                        std::to_string(cap));
  std::vector<Support> out;
  out.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(Support::from_indices(n, idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double equivocation_for_support(const BinnedCode& code, const Support& support, const SecrecyCaps& caps) {
  check_code(code, caps);
  if (support.block_length() != code.n()) throw DomainError("support length does not match the code");
  check_support_size(support, caps.max_support);
  return support_stats(code, support).equivocation;
}

double mutual_info_uniform(const BinnedCode& code, const Support& support, const SecrecyCaps& caps) {
  return std::max(code.message_bits() - equivocation_for_support(code, support, caps), 0.0);
}

MinEquivocation min_equivocation(const BinnedCode& code, int read_budget, const SecrecyCaps& caps,
                                 SearchMode mode, std::size_t samples, std::uint64_t seed) {
  check_code(code, caps);
  if (read_budget > caps.max_support) throw ResourceError("read budget exceeds the support cap");
  const auto supports = supports_for(code.n(), read_budget, mode, samples, seed, caps);
  std::vector<double> values(supports.size());
  parallel_for(supports.size(), [&](std::size_t i) { values[i] = support_stats(code, supports[i]).equivocation; });
  MinEquivocation out;
  out.exact = mode == SearchMode::exhaustive;
  out.supports_evaluated = supports.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best] ||
        (values[i] == values[best] && !out.exact && supports[i].mask() < supports[best].mask()))
      best = i;
  }
  out.delta = values[best];
  out.argmin = supports[best];
  return out;
}

ConsistencyMax consistency_max(const BinnedCode& code, int read_budget, const SecrecyCaps& caps, SearchMode mode,
                               std::size_t samples, std::uint64_t seed) {
  check_code(code, caps);
  const auto supports = supports_for(code.n(), read_budget, mode, samples, seed, caps);
  std::vector<SupportStats> stats(supports.size());
  parallel_for(supports.size(), [&](std::size_t i) { stats[i] = support_stats(code, supports[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < stats.size(); ++i)
    if (stats[i].l_max > stats[best].l_max) best = i;
  return {stats[best].l_max, View(supports[best], stats[best].worst_key), stats[best].worst_bin,
          mode == SearchMode::exhaustive};
}

double counting_bound(double rate_bits, int read_budget, double l) {
  if (!(l >= 1.0)) throw DomainError("counting bound needs L >= 1");
  return rate_bits - read_budget - std::log2(l);
}

double soft_cover_divergence(std::span<const Word> bin, const Support& support, const SecrecyCaps& caps) {
  if (bin.empty()) throw DomainError("soft-cover divergence of an empty bin");
  check_support_size(support, caps.max_divergence_support);
  std::vector<std::uint64_t> keys(bin.size());
  for (std::size_t i = 0; i < bin.size(); ++i) {
    if (bin[i].size() != support.block_length()) throw DomainError("support length does not match the bin");
    keys[i] = bin[i].bits() & support.mask();
  }
  return divergence_from_keys(keys, support.size());
}

double soft_cover_divergence_padded(std::span<const Word> bin, const Support& support) {
  if (bin.empty()) throw DomainError("soft-cover divergence of an empty bin");
  std::map<std::string, std::size_t> view_counts;
  for (const Word& w : bin) {
    if (w.size() != support.block_length()) throw DomainError("support length does not match the bin");
    ++view_counts[observe(w, support).to_string()];
  }
  // Reference: uniform over the 2^|S| strings that carry symbols exactly on S.
  const auto reference = [&](const std::string& s) {
    int free = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool on_support = support.contains(static_cast<int>(i));
      if (on_support == (s[i] == '?')) return 0.0;
      if (on_support) ++free;
    }
    return std::exp2(-free);
  };
  const double m = static_cast<double>(bin.size());
  double total = 0.0;
  for (const auto& [s, c] : view_counts) {
    const double p = static_cast<double>(c) / m;
    total += p * std::log2(p / reference(s));
  }
  return std::max(total, 0.0);
}

SemSurrogate sem_surrogate(const BinnedCode& code, int read_budget, const SecrecyCaps& caps, SearchMode mode,
                           std::size_t samples, std::uint64_t seed) {
  if (read_budget > caps.max_divergence_support) throw ResourceError("read budget exceeds the divergence cap");
  const auto supports = supports_for(code.n(), read_budget, mode, samples, seed, caps);
  std::vector<SemSurrogate> per_support(supports.size());
  parallel_for(supports.size(), [&](std::size_t i) {
    SemSurrogate& best = per_support[i];
    best.support = supports[i];
    for (std::size_t m = 0; m < code.num_messages(); ++m) {
      const double d = soft_cover_divergence(code.bin(m), supports[i], caps);
      if (m == 0 || d > best.value) {
        best.value = d;
        best.message = m;
      }
    }
  });
  SemSurrogate out = per_support.front();
  for (const SemSurrogate& s : per_support)
    if (s.value > out.value) out = s;
  out.exact = mode == SearchMode::exhaustive;
  return out;
}

SecrecyReport secrecy_report(const BinnedCode& code, int read_budget, SearchMode mode, std::size_t samples,
                             std::uint64_t seed, const SecrecyCaps& caps) {
  check_code(code, caps);
  if (read_budget > caps.max_support) throw ResourceError("read budget exceeds the support cap");
  const auto supports = supports_for(code.n(), read_budget, mode, samples, seed, caps);

  SecrecyReport report;
  report.n = code.n();
  report.read_budget = read_budget;
  report.rate_bits = code.rate_bits();
  report.message_bits = code.message_bits();
  report.exact = mode == SearchMode::exhaustive;
  report.per_support.resize(supports.size());
  std::vector<SupportStats> stats(supports.size());
  parallel_for(supports.size(), [&](std::size_t i) {
    SupportMetrics& row = report.per_support[i];
    row.support = supports[i];
    stats[i] = support_stats(code, supports[i]);
    row.equivocation = stats[i].equivocation;
    row.mutual_info = std::max(report.message_bits - row.equivocation, 0.0);
    row.divergence.resize(code.num_messages());
    for (std::size_t m = 0; m < code.num_messages(); ++m)
      row.divergence[m] = soft_cover_divergence(code.bin(m), supports[i], caps);
  });

  std::size_t min_i = 0, lmax_i = 0;
  report.sem = {report.per_support[0].divergence[0], 0, supports[0], report.exact};
  for (std::size_t i = 0; i < supports.size(); ++i) {
    const SupportMetrics& row = report.per_support[i];
    if (row.equivocation < report.per_support[min_i].equivocation ||
        (row.equivocation == report.per_support[min_i].equivocation && !report.exact &&
         row.support.mask() < report.per_support[min_i].support.mask()))
      min_i = i;
    if (stats[i].l_max > stats[lmax_i].l_max) lmax_i = i;
    for (std::size_t m = 0; m < row.divergence.size(); ++m)
      if (row.divergence[m] > report.sem.value) report.sem = {row.divergence[m], m, row.support, report.exact};
  }
  report.delta = {report.per_support[min_i].equivocation, supports[min_i], report.exact, supports.size()};
  report.eta = report.delta.delta / code.n();
  report.consistency = {stats[lmax_i].l_max, View(supports[lmax_i], stats[lmax_i].worst_key),
                        stats[lmax_i].worst_bin, report.exact};
  report.counting_bound =
      counting_bound(report.rate_bits, read_budget, static_cast<double>(report.consistency.l_max) + 1.0);
  return report;
}

void write_secrecy_csv(std::ostream& out, const SecrecyReport& report) {
  const char* exact = report.exact ? "1" : "0";
  out << "metric,support,value,exact_flag\n";
  out << "rate_bits,," << format_real(report.rate_bits) << ",1\n";
  out << "message_bits,," << format_real(report.message_bits) << ",1\n";
  out << "read_budget,," << report.read_budget << ",1\n";
  for (const SupportMetrics& row : report.per_support) {
    const std::string s = row.support.to_string();
    out << "equivocation," << s << ',' << format_real(row.equivocation) << ",1\n";
    out << "mutual_info," << s << ',' << format_real(row.mutual_info) << ",1\n";
  }
  for (const SupportMetrics& row : report.per_support) {
    const std::string s = row.support.to_string();
    for (std::size_t m = 0; m < row.divergence.size(); ++m)
      out << "soft_cover_divergence[m=" << m << "]," << s << ',' << format_real(row.divergence[m]) << ",1\n";
  }
  out << "min_equivocation," << report.delta.argmin.to_string() << ',' << format_real(report.delta.delta) << ','
      << exact << '\n';
  out << "eta," << report.delta.argmin.to_string() << ',' << format_real(report.eta) << ',' << exact << '\n';
  out << "l_max," << report.consistency.worst_view.support().to_string() << ',' << report.consistency.l_max << ','
      << exact << '\n';
  out << "counting_bound,," << format_real(report.counting_bound) << ',' << exact << '\n';
  out << "sem_surrogate," << report.sem.support.to_string() << ',' << format_real(report.sem.value) << ',' << exact
      << '\n';
}

}  // namespace awtc
