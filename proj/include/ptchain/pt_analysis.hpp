#pragma once

// Reality of the quasiparticle spectrum: closed-form isotropic threshold,
// grid scans with refined forbidden intervals, and exceptional points.

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptchain/dispersion.hpp"

namespace ptchain {

enum class BreakingMechanism {
  None,               // fully real
  InnerRootNegative,  // lambda mu - nu < 0 somewhere
  SumNegative,        // lambda + mu < 0 somewhere (implies the former)
};

struct ForbiddenInterval {
  double k_lo;
  double k_hi;

  [[nodiscard]] bool contains(double k) const noexcept { return k_lo <= k && k <= k_hi; }
};

struct RealityPoint {
  double k;
  bool is_real;
  bool inner_root_negative;
  bool sum_negative;
};

struct RealityReport {
  ChainParams params;
  bool fully_real = true;
  std::vector<ForbiddenInterval> forbidden_intervals;
  BreakingMechanism mechanism = BreakingMechanism::None;
  int grid_size = 0;
  std::vector<RealityPoint> points;  // every scanned momentum, ascending
};

enum class ThresholdBranch { Sum, Diff };

struct EtaThreshold {
  double eta_c;
  ThresholdBranch which_min;
  double k_star;
};

/// eta_c = min(|J1 + J2|, |J1 - J2|) for the isotropic chain.
///
/// mu_k is minimal at k = 0 when J1 J2 < 0 and at k = pi/2 when J1 J2 > 0.
/// A tie (J1 J2 = 0, flat mu_k) is reported as Diff at pi/2.
[[nodiscard]] inline EtaThreshold eta_critical_isotropic(const ChainParams& p) {
  require_isotropic(p, "eta_critical_isotropic");
  const double sum = std::abs(p.j1 + p.j2);
  const double diff = std::abs(p.j1 - p.j2);
  if (sum < diff) return {sum, ThresholdBranch::Sum, 0.0};
  return {diff, ThresholdBranch::Diff, pi / 2.0};
}

namespace detail {

[[nodiscard]] inline bool real_at(const ChainParams& p, double k) {
  const auto [minus, plus] = branch_energies(p, k);
  return is_real_value(minus) && is_real_value(plus);
}

[[nodiscard]] inline RealityPoint evaluate_point(const ChainParams& p, double k) {
  const double lam = lambda_k(p, k), mu = mu_k(p, k);
  return {k, real_at(p, k), lam * mu - nu_k(p, k) < 0.0, lam + mu < 0.0};
}

// Closed grid {0, k_1..k_G, pi} with pi/2 added when G is even. The
// isotropic threshold is attained exactly at 0 or pi/2, so both are always
// present.
[[nodiscard]] inline std::vector<double> scan_grid(int grid_size) {
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(grid_size) + 3);
  ks.push_back(0.0);
  for (double k : interior_grid(grid_size)) ks.push_back(k);
  ks.push_back(pi);
  if (grid_size % 2 == 0) ks.push_back(pi / 2.0);
  std::sort(ks.begin(), ks.end());
  return ks;
}

// Reality margins; both are continuous in k and the spectrum at k is real
// whenever both are non-negative.
[[nodiscard]] inline double inner_margin(const ChainParams& p, double k) {
  return lambda_k(p, k) * mu_k(p, k) - nu_k(p, k);
}

[[nodiscard]] inline double branch_margin(const ChainParams& p, double k) {
  const double inner = std::max(inner_margin(p, k), 0.0);
  return lambda_k(p, k) + mu_k(p, k) - 2.0 * std::sqrt(inner);
}

template <class F>
[[nodiscard]] double refine_minimum(F&& f, double lo, double hi) {
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  return boost::math::tools::brent_find_minima(f, lo, hi, bits).first;
}

// Broken momenta that fall between grid points: Brent-refine each discrete
// local minimum of both margins and keep minimizers that turn out broken.
[[nodiscard]] inline std::vector<double> hidden_breaking_points(const ChainParams& p,
                                                                const std::vector<double>& ks) {
  std::vector<double> found;
  auto scan = [&](auto margin) {
    std::vector<double> values(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) values[i] = margin(p, ks[i]);
    for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
      if (values[i] > values[i - 1] || values[i] > values[i + 1]) continue;
      const double k = refine_minimum([&](double x) { return margin(p, x); }, ks[i - 1], ks[i + 1]);
      if (!real_at(p, k)) found.push_back(k);
    }
  };
  scan(inner_margin);
  scan(branch_margin);
  return found;
}

// Bisect between a real and a broken momentum; returns {real side, broken side}.
[[nodiscard]] inline std::pair<double, double> bisect_edge(const ChainParams& p, double k_real,
                                                           double k_broken, double tol) {
  while (std::abs(k_broken - k_real) > tol) {
    const double mid = 0.5 * (k_real + k_broken);
    if (mid == k_real || mid == k_broken) break;
    (real_at(p, mid) ? k_real : k_broken) = mid;
  }
  return {k_real, k_broken};
}

[[nodiscard]] inline std::vector<RealityPoint> scan_points(const ChainParams& p, int grid_size) {
  std::vector<double> ks = scan_grid(grid_size);
  const auto extra = hidden_breaking_points(p, ks);
  ks.insert(ks.end(), extra.begin(), extra.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<RealityPoint> points;
  points.reserve(ks.size());
  for (double k : ks) points.push_back(evaluate_point(p, k));
  return points;
}

inline void check_scan_grid(int grid_size) {
  if (grid_size < 64) throw std::invalid_argument("reality scan needs grid_size >= 64");
}

}  // namespace detail

inline constexpr double interval_edge_tol = 1e-8;

/// Scans [0, pi] for momenta where either branch acquires an imaginary part.
///
/// Forbidden intervals are maximal runs of broken scan points, with interior
/// edges bisected to `edge_tol` in k. Runs touching 0 or pi keep that
/// endpoint.
[[nodiscard]] inline RealityReport classify_reality(const ChainParams& p, int grid_size,
                                                    double edge_tol = interval_edge_tol) {
  validate(p);
  detail::check_scan_grid(grid_size);
  RealityReport report{p, true, {}, BreakingMechanism::None, grid_size,
                       detail::scan_points(p, grid_size)};
  const auto& pts = report.points;

  bool any_sum = false;
  for (std::size_t i = 0; i < pts.size();) {
    if (pts[i].is_real) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pts.size() && !pts[j + 1].is_real) ++j;
    for (std::size_t m = i; m <= j; ++m) any_sum = any_sum || pts[m].sum_negative;

    auto midpoint = [](std::pair<double, double> e) { return 0.5 * (e.first + e.second); };
    double lo = pts[i].k, hi = pts[j].k;
    if (i > 0) lo = midpoint(detail::bisect_edge(p, pts[i - 1].k, pts[i].k, edge_tol));
    if (j + 1 < pts.size()) hi = midpoint(detail::bisect_edge(p, pts[j + 1].k, pts[j].k, edge_tol));
    report.forbidden_intervals.push_back({lo, hi});
    i = j + 1;
  }

  report.fully_real = report.forbidden_intervals.empty();
  if (!report.fully_real)
    report.mechanism = any_sum ? BreakingMechanism::SumNegative : BreakingMechanism::InnerRootNegative;
  return report;
}

/// Predicate form of classify_reality without interval refinement.
[[nodiscard]] inline bool spectrum_fully_real(const ChainParams& p, int grid_size) {
  validate(p);
  detail::check_scan_grid(grid_size);
  const auto ks = detail::scan_grid(grid_size);
  for (double k : ks)
    if (!detail::real_at(p, k)) return false;
  return detail::hidden_breaking_points(p, ks).empty();
}

/// Largest eta in [0, eta_max] (within tol) whose spectrum is fully real, with
/// every other parameter held fixed. Assumes breaking is monotone in eta.
[[nodiscard]] inline double eta_critical_numeric(const ChainParams& params, double eta_max,
                                                 double tol, int grid_size = 1024) {
  if (!(eta_max > 0.0)) throw std::invalid_argument("eta_max must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!spectrum_fully_real(params.with_eta(0.0), grid_size)) {
    throw std::logic_error("spectrum broken at eta = 0: degenerate input or tolerance bug");
  }
  if (spectrum_fully_real(params.with_eta(eta_max), grid_size)) return eta_max;
  double lo = 0.0, hi = eta_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (spectrum_fully_real(params.with_eta(mid), grid_size) ? lo : hi) = mid;
  }
  return lo;
}

inline constexpr double touch_threshold = 1e-6;

/// Momenta in [0, pi) where the two branches coalesce (|Lambda+ - Lambda-| < 1e-6
/// at a local minimum). These are the exceptional points that bound the
/// forbidden intervals, plus isolated touches inside a real spectrum.
[[nodiscard]] inline std::vector<double> branch_touch_points(const ChainParams& p, int grid_size) {
  const auto report = classify_reality(p, grid_size);
  auto gap = [&](double k) {
    const auto [minus, plus] = branch_energies(p, k);
    return std::abs(plus - minus);
  };
  std::vector<double> touches;

  for (const auto& iv : report.forbidden_intervals) {
    for (double edge : {iv.k_lo, iv.k_hi}) {
      if (edge <= 0.0 || edge >= pi) continue;
      // The refined edge sits within interval_edge_tol; re-bracket tightly.
      const double a = std::max(0.0, edge - 2.0 * interval_edge_tol);
      const double b = std::min(pi, edge + 2.0 * interval_edge_tol);
      const bool ra = detail::real_at(p, a), rb = detail::real_at(p, b);
      if (ra == rb) continue;
      const auto [k_real, k_broken] = detail::bisect_edge(p, ra ? a : b, ra ? b : a, 0.0);
      if (gap(k_real) < touch_threshold) touches.push_back(k_real);
    }
  }

  const auto ks = detail::scan_grid(grid_size);
  std::vector<double> sq(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto b = branch_energies(p, ks[i]);
    sq[i] = std::norm(b.plus - b.minus);
  }
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const bool left_ok = i == 0 || sq[i] <= sq[i - 1];
    if (!left_ok || sq[i] > sq[i + 1]) continue;
    double k = ks[i];
    if (i > 0) {
      k = detail::refine_minimum(
          [&](double x) {
            const auto b = branch_energies(p, x);
            return std::norm(b.plus - b.minus);
          },
          ks[i - 1], ks[i + 1]);
    }
    if (gap(k) < touch_threshold && detail::real_at(p, k)) touches.push_back(k);
  }

  // k = pi is the same cell momentum as k = 0.
  for (double& k : touches)
    if (k >= pi - touch_threshold) k = 0.0;
  std::sort(touches.begin(), touches.end());
  std::vector<double> unique;
  for (double k : touches)
    if (unique.empty() || k - unique.back() > 1e-6) unique.push_back(k);
  return unique;
}

}  // namespace ptchain
