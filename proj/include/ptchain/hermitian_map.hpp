#pragma once

// Hermitian counterpart of the isotropic and anisotropic chains obtained by
// renormalizing the couplings so that lambda_k, mu_k and nu_k are unchanged
// with the imaginary field switched off.
//
//   J1' = a J1,  J2' = J2 / a,  g1' = a g1,  g2' = g2 / a,
//   h'^2 = h^2 + g1^2 + g2^2 - g1'^2 - g2'^2,  eta' = 0,
//
// where a^2 solves J1^2 x^2 - (J1^2 + J2^2 - eta^2) x + J2^2 = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/criticality.hpp"

namespace ptchain {

enum class RootChoice { A1, A2, NegA1, NegA2 };
enum class SignClass { FerroPreserving, FerroFlipping };

struct CounterpartSolution {
  RootChoice root = RootChoice::A1;
  double a = 1.0;
  double j1_prime = 0.0;
  double j2_prime = 0.0;
  double gamma1_prime = 0.0;
  double gamma2_prime = 0.0;
  std::optional<double> h_prime;
  SignClass sign_class = SignClass::FerroPreserving;
  bool valid = false;
  std::string reason;

  /// The Hermitian chain this solution describes (eta' = 0).
  [[nodiscard]] ChainParams params(int n_sites = 8) const {
    return {j1_prime, j2_prime, gamma1_prime, gamma2_prime, h_prime.value_or(0.0), 0.0, n_sites};
  }
};

/// Thrown when eta >= eta_c leaves no real renormalization factor.
class NoCounterpartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

// Relative width of the eta = eta_c band treated as the double root.
inline constexpr double boundary_rel_tol = 1e-12;

[[nodiscard]] inline double isotropic_threshold(const ChainParams& p) {
  return std::min(std::abs(p.j1 + p.j2), std::abs(p.j1 - p.j2));
}

[[nodiscard]] inline CounterpartSolution make_solution(const ChainParams& p, RootChoice root,
                                                       double a) {
  CounterpartSolution s;
  s.root = root;
  s.a = a;
  s.j1_prime = a * p.j1;
  s.j2_prime = p.j2 / a;
  s.gamma1_prime = a * p.gamma1;
  s.gamma2_prime = p.gamma2 / a;
  s.sign_class = a > 0.0 ? SignClass::FerroPreserving : SignClass::FerroFlipping;
  const double radicand = p.h * p.h + p.gamma1 * p.gamma1 + p.gamma2 * p.gamma2 -
                          s.gamma1_prime * s.gamma1_prime - s.gamma2_prime * s.gamma2_prime;
  if (radicand >= 0.0) s.h_prime = std::sqrt(radicand);
  return s;
}

}  // namespace detail

/// Real roots {a1, a2, -a1, -a2} of the renormalization quartic, a1 >= a2 > 0.
///
/// Empty when eta > eta_c. At eta = eta_c the double root a1 = a2 is returned
/// with valid = false: the counterpart is the uniform chain J1' = J2', but the
/// original sits on an exceptional point.
[[nodiscard]] inline std::vector<CounterpartSolution> renormalization_roots(const ChainParams& p) {
  if (p.j1 == 0.0 || p.j2 == 0.0) {
    throw std::invalid_argument("renormalization needs J1 != 0 and J2 != 0");
  }
  const double eta_c = detail::isotropic_threshold(p);
  const double band = detail::boundary_rel_tol * std::max(1.0, eta_c);
  if (p.eta > eta_c + band) return {};
  const bool on_boundary = p.eta >= eta_c - band;

  const double aj1 = std::abs(p.j1), aj2 = std::abs(p.j2);
  const double s = p.j1 * p.j1 + p.j2 * p.j2 - p.eta * p.eta;
  // Discriminant factored as (eta_c^2 - eta^2)((|J1| + |J2|)^2 - eta^2).
  const double outer = aj1 + aj2;
  const double disc =
      on_boundary ? 0.0 : (eta_c - p.eta) * (eta_c + p.eta) * (outer - p.eta) * (outer + p.eta);
  const double x_plus = (s + std::sqrt(disc)) / (2.0 * p.j1 * p.j1);
  const double a1 = std::sqrt(x_plus);
  // Vieta: a1 a2 = |J2 / J1|.
  const double a2 = on_boundary ? a1 : aj2 / (aj1 * a1);

  std::vector<CounterpartSolution> out;
  const std::array<std::pair<RootChoice, double>, 4> roots{
      {{RootChoice::A1, a1}, {RootChoice::A2, a2}, {RootChoice::NegA1, -a1}, {RootChoice::NegA2, -a2}}};
  for (const auto& [choice, a] : roots) {
    auto sol = detail::make_solution(p, choice, a);
    if (on_boundary) {
      sol.reason = "eta == eta_c: exceptional point";
    } else if (!sol.h_prime) {
      sol.reason = "h' radicand negative";
    } else {
      sol.valid = true;
    }
    out.push_back(std::move(sol));
  }

  // One-site translation: J1'(a1) = J2'(a2) when J1 J2 > 0, and with the
  // opposite sign otherwise.
  const double sign = p.j1 * p.j2 > 0.0 ? 1.0 : -1.0;
  const double swap = std::max(std::abs(out[0].j1_prime - sign * out[1].j2_prime),
                               std::abs(out[1].j1_prime - sign * out[0].j2_prime));
  if (swap > 1e-12 * std::max(1.0, std::abs(out[0].j1_prime))) {
    throw std::logic_error("renormalization roots violate the swap identity");
  }
  return out;
}

namespace detail {

[[nodiscard]] inline CounterpartSolution pick_root(const ChainParams& p, RootChoice choice) {
  const double eta_c = isotropic_threshold(p);
  if (p.eta >= eta_c - boundary_rel_tol * std::max(1.0, eta_c)) {
    throw NoCounterpartError("eta >= eta_c");
  }
  for (const auto& r : renormalization_roots(p))
    if (r.root == choice) return r;
  throw std::logic_error("root choice not found");
}

}  // namespace detail

/// Isotropic counterpart: J' renormalized, h' = h. Throws NoCounterpartError
/// for eta >= eta_c.
[[nodiscard]] inline CounterpartSolution isotropic_counterpart(const ChainParams& p,
                                                               RootChoice choice = RootChoice::A1) {
  require_isotropic(p, "isotropic_counterpart");
  auto sol = detail::pick_root(p, choice);
  sol.h_prime = p.h;
  sol.valid = true;
  sol.reason.clear();
  return sol;
}

/// Anisotropic counterpart with the non-linear field remap. When the h'
/// radicand is negative the solution comes back with valid = false and no h'.
[[nodiscard]] inline CounterpartSolution anisotropic_counterpart(const ChainParams& p,
                                                                 RootChoice choice = RootChoice::A1) {
  return detail::pick_root(p, choice);
}

struct SpectrumComparison {
  double band_deviation;      // max |Lambda(original) - Lambda(counterpart)| over both branches
  double critical_deviation;  // gap closings at k = 0, pi/2 (and critical fields if isotropic)
};

/// Compares dispersions of the original chain and its counterpart over the
/// interior grid, plus the signed gaps at k = 0 and pi/2. For the isotropic map
/// the critical fields themselves are compared as well.
[[nodiscard]] inline SpectrumComparison verify_spectrum_equality(const ChainParams& original,
                                                                 const CounterpartSolution& cp,
                                                                 int grid_size) {
  if (!cp.valid) throw std::invalid_argument("counterpart is not valid: " + cp.reason);
  const ChainParams hermitian = cp.params(original.n_sites);
  SpectrumComparison out{0.0, 0.0};
  for (double k : interior_grid(grid_size)) {
    const auto a = branch_energies(original, k);
    const auto b = branch_energies(hermitian, k);
    out.band_deviation =
        std::max({out.band_deviation, std::abs(a.minus - b.minus), std::abs(a.plus - b.plus)});
  }
  for (auto which : {SpecialMomentum::K0, SpecialMomentum::KPi2}) {
    out.critical_deviation = std::max(
        out.critical_deviation,
        std::abs(gap_at_special_k(original, which) - gap_at_special_k(hermitian, which)));
  }
  if (original.isotropic()) {
    const auto f0 = critical_fields(original), f1 = critical_fields(hermitian);
    auto compare = [&](const std::optional<double>& x, const std::optional<double>& y) {
      if (x.has_value() != y.has_value()) {
        out.critical_deviation = std::numeric_limits<double>::infinity();
      } else if (x) {
        out.critical_deviation = std::max(out.critical_deviation, std::abs(*x - *y));
      }
    };
    compare(f0.h_c1, f1.h_c1);
    compare(f0.h_c2, f1.h_c2);
  }
  return out;
}

}  // namespace ptchain
