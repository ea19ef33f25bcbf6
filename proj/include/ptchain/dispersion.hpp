#pragma once

// Closed-form single-particle dispersion of the dimerized chain.
//
// k is the momentum per two-site cell convention used throughout the
// library: the cell Fourier momentum is 2k, and the quasiparticle sum runs
// over 0 < k < pi.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptchain/params.hpp"

namespace ptchain {

/// Momentum restricted to the open interval (0, pi).
class Momentum {
 public:
  explicit Momentum(double k) : k_(k) {
    if (!(k > 0.0 && k < pi)) throw std::invalid_argument("momentum must lie in (0, pi)");
  }
  [[nodiscard]] double value() const noexcept { return k_; }

 private:
  double k_;
};

// The three quadratic forms are written as sums of squares so that the
// special points k = 0, pi/2 are evaluated without cancellation.

/// h^2 + g1^2 + g2^2 - 2 g1 g2 cos 2k, always >= 0.
[[nodiscard]] inline double lambda_k(const ChainParams& p, double k) {
  const double c = std::cos(k), s = std::sin(k);
  const double diff = p.gamma1 - p.gamma2, sum = p.gamma1 + p.gamma2;
  return p.h * p.h + diff * diff * c * c + sum * sum * s * s;
}

/// J1^2 + J2^2 + 2 J1 J2 cos 2k - eta^2; negative values signal broken modes.
[[nodiscard]] inline double mu_k(const ChainParams& p, double k) {
  const double c = std::cos(k), s = std::sin(k);
  const double sum = p.j1 + p.j2, diff = p.j1 - p.j2;
  return sum * sum * c * c + diff * diff * s * s - p.eta * p.eta;
}

/// (J1 g2 + J2 g1)^2 sin^2 2k.
[[nodiscard]] inline double nu_k(const ChainParams& p, double k) {
  const double coupling = p.j1 * p.gamma2 + p.j2 * p.gamma1;
  const double s2 = 2.0 * std::sin(k) * std::cos(k);
  return coupling * coupling * s2 * s2;
}

struct BranchPair {
  Complex minus;  // acoustic, inner root subtracted
  Complex plus;   // optical, inner root added
};

/// Principal-root evaluation of sqrt(lambda + mu -/+ 2 sqrt(lambda mu - nu)).
///
/// Branch labels follow the sign in front of the inner root, not the
/// magnitude of the result.
[[nodiscard]] inline BranchPair branch_energies(const ChainParams& p, double k) {
  const double lam = lambda_k(p, k);
  const double mu = mu_k(p, k);
  const double nu = nu_k(p, k);
  const Complex inner = std::sqrt(Complex(lam * mu - nu, 0.0));
  const Complex base(lam + mu, 0.0);
  const Complex outer = base + 2.0 * inner;
  // Rationalized acoustic branch: (lam - mu)^2 + 4 nu >= 0 stays clear of the
  // cancellation in base - 2 inner when the gap closes.
  const Complex minus_sq = inner.imag() == 0.0 && outer.real() > 0.0
                               ? ((lam - mu) * (lam - mu) + 4.0 * nu) / outer
                               : base - 2.0 * inner;
  return {std::sqrt(minus_sq), std::sqrt(outer)};
}

/// h -/+ sqrt(mu_k). Agrees with branch_energies up to the sign of each root.
[[nodiscard]] inline BranchPair isotropic_branch_energies(const ChainParams& p, double k) {
  require_isotropic(p, "isotropic_branch_energies");
  const Complex root = std::sqrt(Complex(mu_k(p, k), 0.0));
  return {p.h - root, p.h + root};
}

[[nodiscard]] inline bool is_real_value(Complex z, double tol = tol_reality) {
  return std::abs(z.imag()) <= tol;
}

struct BandSample {
  Momentum k;
  Complex lambda_minus;
  Complex lambda_plus;
  bool is_real;
};

[[nodiscard]] inline BandSample band_sample(const ChainParams& p, Momentum k) {
  const auto [minus, plus] = branch_energies(p, k.value());
  return {k, minus, plus, is_real_value(minus) && is_real_value(plus)};
}

struct BandSpectrum {
  ChainParams params;
  std::vector<BandSample> samples;
  int grid_size = 0;

  [[nodiscard]] bool fully_real() const {
    for (const auto& s : samples)
      if (!s.is_real) return false;
    return true;
  }
};

/// Open uniform grid k_m = m pi / (grid_size + 1), m = 1..grid_size.
[[nodiscard]] inline std::vector<double> interior_grid(int grid_size) {
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(grid_size));
  for (int m = 1; m <= grid_size; ++m) ks.push_back(m * pi / (grid_size + 1));
  return ks;
}

[[nodiscard]] inline BandSpectrum band_spectrum(const ChainParams& p, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("band grid needs at least 2 points");
  BandSpectrum out{p, {}, grid_size};
  out.samples.reserve(static_cast<std::size_t>(grid_size));
  for (double k : interior_grid(grid_size)) out.samples.push_back(band_sample(p, Momentum(k)));
  return out;
}

/// Ground-state energy per two-site cell in the thermodynamic limit,
/// -(1/2pi) * integral_0^pi (Lambda_+ + Lambda_-) dk, by the midpoint rule.
///
/// The integrand is pi-periodic, so the midpoint rule converges
/// geometrically wherever the branches are smooth. A complex result means
/// some sampled branch was complex.
[[nodiscard]] inline Complex ground_state_energy_density(const ChainParams& p,
                                                         int quadrature_points) {
  if (quadrature_points < 16) throw std::invalid_argument("quadrature needs at least 16 points");
  Complex sum = 0.0;
  const double step = pi / quadrature_points;
  for (int m = 0; m < quadrature_points; ++m) {
    const auto [minus, plus] = branch_energies(p, (m + 0.5) * step);
    sum += minus + plus;
  }
  return -sum * step / (2.0 * pi);
}

}  // namespace ptchain
