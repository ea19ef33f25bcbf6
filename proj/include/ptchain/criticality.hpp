#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/pt_analysis.hpp"

namespace ptchain {

enum class SpecialMomentum { K0, KPi2 };

/// Signed acoustic gap at the points where nu_k vanishes:
///   K0:   sqrt(h^2 + (g1 - g2)^2) - sqrt((J1 + J2)^2 - eta^2)
///   KPi2: sqrt(h^2 + (g1 + g2)^2) - sqrt((J1 - J2)^2 - eta^2)
/// Unlike branch_energies this keeps the sign, so it turns negative between
/// the critical fields. Complex when the second radicand is negative.
[[nodiscard]] inline Complex gap_at_special_k(const ChainParams& p, SpecialMomentum which) {
  const double g = which == SpecialMomentum::K0 ? p.gamma1 - p.gamma2 : p.gamma1 + p.gamma2;
  const double j = which == SpecialMomentum::K0 ? p.j1 + p.j2 : p.j1 - p.j2;
  const double field = std::sqrt(p.h * p.h + g * g);
  const Complex hopping = std::sqrt(Complex((std::abs(j) - p.eta) * (std::abs(j) + p.eta), 0.0));
  return field - hopping;
}

struct CriticalFields {
  std::optional<double> h_c1;  // closes the gap at k = 0
  std::optional<double> h_c2;  // closes the gap at k = pi/2

  [[nodiscard]] bool both_defined() const noexcept { return h_c1 && h_c2; }
};

namespace detail {

[[nodiscard]] inline std::optional<double> critical_field(double j, double eta, double g) {
  const double radicand = (std::abs(j) - eta) * (std::abs(j) + eta) - g * g;
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

}  // namespace detail

[[nodiscard]] inline CriticalFields critical_fields(const ChainParams& p) {
  return {detail::critical_field(p.j1 + p.j2, p.eta, p.gamma1 - p.gamma2),
          detail::critical_field(p.j1 - p.j2, p.eta, p.gamma1 + p.gamma2)};
}

enum class Reality { Real, Broken };
enum class Order { Ordered, Disordered, Undefined };

struct PhasePoint {
  double h;
  double eta;
  Reality reality;
  Order order;
  std::optional<double> h_c_low;
  std::optional<double> h_c_high;
  CriticalFields fields;
  // The isotropic chain sits in a different universality class with no
  // order parameter; the window is still reported but flagged.
  bool isotropic_caveat;
};

/// Reality from the grid scan, order from the closed-form critical window
/// (ordered strictly inside it). One undefined field leaves the order undefined.
[[nodiscard]] inline PhasePoint classify_phase(const ChainParams& p, int grid_size) {
  const bool real = spectrum_fully_real(p, grid_size);
  const CriticalFields fields = critical_fields(p);
  PhasePoint point{p.h, p.eta, real ? Reality::Real : Reality::Broken, Order::Undefined,
                   std::nullopt, std::nullopt, fields, p.isotropic()};
  if (fields.both_defined()) {
    point.h_c_low = std::min(*fields.h_c1, *fields.h_c2);
    point.h_c_high = std::max(*fields.h_c1, *fields.h_c2);
    point.order = (*point.h_c_low < p.h && p.h < *point.h_c_high) ? Order::Ordered
                                                                  : Order::Disordered;
  }
  return point;
}

struct SweepRange {
  double lo;
  double hi;
  int steps;

  [[nodiscard]] double at(int i) const {
    return i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
  }
};

inline void validate(const SweepRange& r, const char* name) {
  if (r.steps < 2 || !(r.lo <= r.hi) || r.lo < 0.0) {
    throw std::invalid_argument(std::string("invalid ") + name +
                                " range: need 0 <= lo <= hi and steps >= 2");
  }
}

/// Row-major (h outer, eta inner) sweep over the (h, eta) plane.
[[nodiscard]] inline std::vector<PhasePoint> phase_diagram(const ChainParams& templ,
                                                           const SweepRange& h_range,
                                                           const SweepRange& eta_range,
                                                           int grid_size) {
  validate(h_range, "h");
  validate(eta_range, "eta");
  std::vector<PhasePoint> points;
  points.reserve(static_cast<std::size_t>(h_range.steps) * eta_range.steps);
  for (int i = 0; i < h_range.steps; ++i)
    for (int j = 0; j < eta_range.steps; ++j)
      points.push_back(classify_phase(templ.with_h(h_range.at(i)).with_eta(eta_range.at(j)),
                                      grid_size));
  return points;
}

}  // namespace ptchain
