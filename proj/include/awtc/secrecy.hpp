#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "awtc/code.hpp"
#include "awtc/view.hpp"

namespace awtc {

struct SecrecyCaps {
  std::size_t max_words = std::size_t{1} << 16;      // exact entropy tables
  int max_support = 16;                              // |S| for equivocation
  int max_divergence_support = 20;                   // |S| for soft-cover tables
  std::uint64_t max_supports = std::uint64_t{1} << 20;  // C(n, k) enumeration
};

/// All size-k subsets of [0, n) in lexicographic order of their sorted
/// coordinate lists. Throws ResourceError when C(n, k) exceeds `cap`.
std::vector<Support> enumerate_supports(int n, int k, std::uint64_t cap);

/// H(S | V(S)) in bits for uniform message and seed, exact. Duplicate
/// codewords contribute with multiplicity.
double equivocation_for_support(const BinnedCode& code, const Support& support, const SecrecyCaps& caps = {});

/// I(S; V(S)) = R'n - H(S | V(S)) for a uniform message.
double mutual_info_uniform(const BinnedCode& code, const Support& support, const SecrecyCaps& caps = {});

struct MinEquivocation {
  double delta = 0.0;
  Support argmin;
  bool exact = true;  // false: minimum over sampled supports, an upper bound on the true value
  std::size_t supports_evaluated = 0;
};

/// Minimum equivocation over supports of size read_budget, ties to the
/// lexicographically smallest support. Sampled mode draws `samples` uniform
/// supports from `seed`.
MinEquivocation min_equivocation(const BinnedCode& code, int read_budget, const SecrecyCaps& caps = {},
                                 SearchMode mode = SearchMode::exhaustive, std::size_t samples = 0,
                                 std::uint64_t seed = 0);

struct ConsistencyMax {
  std::size_t l_max = 0;
  View worst_view;
  std::size_t worst_bin = 0;
  bool exact = true;  // false: over sampled supports, a lower bound
};

/// Largest number of codewords of one bin consistent with one view, over all
/// bins and all views with support size read_budget.
ConsistencyMax consistency_max(const BinnedCode& code, int read_budget, const SecrecyCaps& caps = {},
                               SearchMode mode = SearchMode::exhaustive, std::size_t samples = 0,
                               std::uint64_t seed = 0);

/// Rn - read_budget - log2 L; may be negative. Throws DomainError for L < 1.
double counting_bound(double rate_bits, int read_budget, double l);

/// D(P_bin restricted to S || uniform on {0,1}^|S|) in bits, where P_bin is
/// the empirical distribution of the bin's words.
double soft_cover_divergence(std::span<const Word> bin, const Support& support, const SecrecyCaps& caps = {});

/// The same divergence computed on full strings over {0,1,?}^n, with the
/// reference distribution uniform over the strings whose support is S.
double soft_cover_divergence_padded(std::span<const Word> bin, const Support& support);

struct SemSurrogate {
  double value = 0.0;
  std::size_t message = 0;
  Support support;
  bool exact = true;
};

/// Max over messages and size-read_budget supports of the soft-cover
/// divergence of the message's bin.
SemSurrogate sem_surrogate(const BinnedCode& code, int read_budget, const SecrecyCaps& caps = {},
                           SearchMode mode = SearchMode::exhaustive, std::size_t samples = 0,
                           std::uint64_t seed = 0);

struct SupportMetrics {
  Support support;
  double equivocation = 0.0;
  double mutual_info = 0.0;
  std::vector<double> divergence;  // per message
};

struct SecrecyReport {
  int n = 0;
  int read_budget = 0;
  double rate_bits = 0.0;
  double message_bits = 0.0;
  bool exact = true;
  std::vector<SupportMetrics> per_support;
  MinEquivocation delta;
  double eta = 0.0;
  ConsistencyMax consistency;
  double counting_bound = 0.0;  // with L = L_max + 1, the strict-count hypothesis
  SemSurrogate sem;
};

/// Every metric in one pass over the supports (all of them, or `samples`
/// random ones in sampled mode).
SecrecyReport secrecy_report(const BinnedCode& code, int read_budget, SearchMode mode = SearchMode::exhaustive,
                             std::size_t samples = 0, std::uint64_t seed = 0, const SecrecyCaps& caps = {});

/// CSV with header metric,support,value,exact_flag.
void write_secrecy_csv(std::ostream& out, const SecrecyReport& report);

}  // namespace awtc
