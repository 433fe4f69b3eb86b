#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace awtc {

// Read fraction rho_r and write (error) fraction rho_w of the adversarial
// wiretap channel. The bound calculator admits the closed endpoints
// rho_r in [0, 1], rho_w in [0, 1/2].
struct ChannelParams {
  double rho_r = 0.0;
  double rho_w = 0.0;
};

/// Differences this small from the zero-capacity threshold count as equality.
inline constexpr double kThresholdSlack = 1e-12;

struct BoundsResult {
  double lower_raw = 0.0;  // 1 - h(rho_w) - rho_r, unclamped
  double lower = 0.0;      // max(lower_raw, 0)
  double upper = 0.0;      // 1 - h(rho_w) - rho_r - f_min
  double p_star = 0.0;
  double f_min = 0.0;
  bool zero_capacity = false;  // rho_r > 1 - 4 rho_w (1 - rho_w), up to kThresholdSlack
};

struct Minimum {
  double p_star = 0.0;
  double f_min = 0.0;
};

struct BoundsRow {
  double rho_r = 0.0;
  double rho_w = 0.0;
  BoundsResult bounds;
  std::optional<double> ratio;  // lower / upper, present when upper > 0
};

/// Binary entropy in bits, with 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// f(p) = h((2 rho_w - 1) p + 1 - rho_w) - h(rho_w) - rho_r h(p).
///
/// The difference of the first two terms is evaluated in a cancellation-free
/// form, so f keeps its sign for p arbitrarily close to 0 or 1.
double f_objective(double p, const ChannelParams& params);

/// Global minimizer of f on [0, 1]. f is symmetric about 1/2, so the search
/// runs on [0, 1/2], which also yields the smallest minimizer on ties.
Minimum minimize_f(const ChannelParams& params);

BoundsResult capacity_bounds(const ChannelParams& params);

/// One row per rho_w in the list and rho_r in {step, 2 step, ...} below 1,
/// ordered by (rho_w, rho_r). Rows are computed in parallel.
std::vector<BoundsRow> bounds_grid(std::span<const double> rho_w_list, double rho_r_step);

/// CSV with header rho_r,rho_w,lower_raw,lower,upper,p_star,f_min,ratio.
void write_bounds_csv(std::ostream& out, std::span<const BoundsRow> rows);

}  // namespace awtc
