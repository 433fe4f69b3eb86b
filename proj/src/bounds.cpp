#include "awtc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "awtc/error.hpp"
#include "awtc/format.hpp"
#include "awtc/parallel.hpp"

namespace awtc {
namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInvPhi = 0.61803398874989484820;

void check_params(const ChannelParams& params) {
  if (!(params.rho_r >= 0.0 && params.rho_r <= 1.0))
    throw DomainError("rho_r must lie in [0, 1]");
  if (!(params.rho_w >= 0.0 && params.rho_w <= 0.5))
    throw DomainError("rho_w must lie in [0, 1/2]");
}

// h(p) in nats for p in [0, 1/2]; log1p keeps full relative precision as p -> 0.
double entropy_nats_small(double p) {
  if (p == 0.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

// h(rho + d) - h(rho) in nats, for rho in [0, 1/2] and 0 <= d <= 1 - 2 rho.
// Written so that no two O(1) quantities are subtracted when d is small.
double entropy_increment_nats(double rho, double d) {
  if (d == 0.0) return 0.0;
  if (rho == 0.0) return entropy_nats_small(std::min(d, 1.0 - d));
  const double q = rho + d;
  return -rho * std::log1p(d / rho) - (1.0 - rho) * std::log1p(-d / (1.0 - rho)) +
         d * (std::log1p(-q) - std::log(q));
}

template <typename F>
Minimum golden_section(F&& f, double lo, double hi, double tolerance) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return (-p * std::log(p) - (1.0 - p) * std::log1p(-p)) / kLn2;
}

double f_objective(double p, const ChannelParams& params) {
  check_params(params);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("f_objective: p must lie in [0, 1]");
  // f(p) = f(1 - p); 1 - p is exact for p >= 1/2.
  if (p > 0.5) p = 1.0 - p;
  // f(1/2) = 1 - h(rho_w) - rho_r, evaluated exactly as the lower bound is so
  // that upper = lower_raw - f_min >= 0 holds without rounding slack.
  if (p == 0.5) return (1.0 - binary_entropy(params.rho_w)) - params.rho_r;
  // h((2 rho_w - 1) p + 1 - rho_w) = h(rho_w + (1 - 2 rho_w) p) by symmetry of h.
  const double rho = params.rho_w;
  const double gain = entropy_increment_nats(rho, (1.0 - 2.0 * rho) * p);
  return (gain - params.rho_r * entropy_nats_small(p)) / kLn2;
}

Minimum minimize_f(const ChannelParams& params) {
  check_params(params);
  auto f = [&](double p) { return f_objective(p, params); };

  constexpr int kGrid = 500;  // 1e-3 spacing over [0, 1/2]
  constexpr double kStep = 1e-3;
  Minimum best{0.0, f(0.0)};
  int best_index = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double p = i * kStep;
    const double value = f(p);
    if (value < best.f_min) {
      best = {p, value};
      best_index = i;
    }
  }

  const double lo = std::max(0, best_index - 1) * kStep;
  const double hi = std::min(kGrid, best_index + 1) * kStep;
  const Minimum refined = golden_section(f, lo, hi, 1e-12);

  // Minimizers can sit far below the grid spacing (down to 2^-250 and beyond
  // for small rho_r), so the first cell is also searched on a log scale.
  const Minimum edge_log = golden_section([&](double t) { return f(std::exp2(t)); }, -1074.0,
                                          std::log2(kStep), 1e-9);
  const Minimum edge{std::exp2(edge_log.p_star), edge_log.f_min};

  Minimum result = best;
  for (const Minimum& candidate : {edge, refined}) {
    if (candidate.f_min < result.f_min ||
        (candidate.f_min == result.f_min && candidate.p_star < result.p_star))
      result = candidate;
  }
  // Points a few ulps below f(1/2) are rounding noise of the flat maximum of
  // h around 1/2; keeping them would leave the upper bound at +1e-16 where it
  // is exactly 0.
  const double centre = f(0.5);
  if (centre <= 0.0 && result.f_min >= centre - 64 * std::numeric_limits<double>::epsilon()) result = {0.5, centre};
  return result;
}

BoundsResult capacity_bounds(const ChannelParams& params) {
  check_params(params);
  const Minimum minimum = minimize_f(params);
  BoundsResult out;
  out.lower_raw = (1.0 - binary_entropy(params.rho_w)) - params.rho_r;
  out.lower = std::max(out.lower_raw, 0.0);
  out.f_min = minimum.f_min;
  out.p_star = minimum.p_star;
  out.upper = out.lower_raw - minimum.f_min;
  // A grid value such as 0.64 = 64 * 0.01 can land one ulp above its own
  // threshold 1 - 4 (0.1)(0.9); the strict inequality is taken with slack.
  out.zero_capacity = params.rho_r - (1.0 - 4.0 * params.rho_w * (1.0 - params.rho_w)) > kThresholdSlack;
  return out;
}

std::vector<BoundsRow> bounds_grid(std::span<const double> rho_w_list, double rho_r_step) {
  if (!(rho_r_step > 0.0) || !std::isfinite(rho_r_step))
    throw DomainError("bounds_grid: rho_r step must be positive");
  if (rho_w_list.empty()) throw DomainError("bounds_grid: empty rho_w list");
  std::vector<double> rho_ws(rho_w_list.begin(), rho_w_list.end());
  for (double rho_w : rho_ws) {
    if (!(rho_w > 0.0 && rho_w < 0.5)) throw DomainError("bounds_grid: rho_w must lie in (0, 1/2)");
  }
  std::sort(rho_ws.begin(), rho_ws.end());

  std::vector<double> rho_rs;
  for (long k = 1;; ++k) {
    const double rho_r = static_cast<double>(k) * rho_r_step;
    if (rho_r >= 1.0 - 1e-12) break;
    rho_rs.push_back(rho_r);
  }

  std::vector<BoundsRow> rows(rho_ws.size() * rho_rs.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    BoundsRow& row = rows[i];
    row.rho_w = rho_ws[i / rho_rs.size()];
    row.rho_r = rho_rs[i % rho_rs.size()];
    row.bounds = capacity_bounds({row.rho_r, row.rho_w});
    if (row.bounds.upper > 0.0) row.ratio = row.bounds.lower / row.bounds.upper;
  });
  return rows;
}

void write_bounds_csv(std::ostream& out, std::span<const BoundsRow> rows) {
  out << "rho_r,rho_w,lower_raw,lower,upper,p_star,f_min,ratio\n";
  for (const BoundsRow& row : rows) {
    out << format_real(row.rho_r) << ',' << format_real(row.rho_w) << ','
        << format_real(row.bounds.lower_raw) << ',' << format_real(row.bounds.lower) << ','
        << format_real(row.bounds.upper) << ',' << format_real(row.bounds.p_star) << ','
        << format_real(row.bounds.f_min) << ',';
    if (row.ratio) out << format_real(*row.ratio);
    out << '\n';
  }
}

}  // namespace awtc
