#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ptchain {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Absolute tolerance (energy units) below which an imaginary part counts as zero.
inline constexpr double tol_reality = 1e-9;

/// Couplings of the dimerized XY chain with an imaginary staggered field.
///
/// Bond (2l-1, 2l) carries (j1, gamma1), bond (2l, 2l+1) carries (j2, gamma2).
/// The uniform field h is real, the staggered field is i*eta*(-1)^l / 2.
/// n_sites is only read by finite-size operations.
struct ChainParams {
  double j1 = 1.0;
  double j2 = 1.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double h = 0.0;
  double eta = 0.0;
  int n_sites = 8;

  [[nodiscard]] bool isotropic() const noexcept { return gamma1 == 0.0 && gamma2 == 0.0; }

  [[nodiscard]] ChainParams with_eta(double value) const {
    ChainParams p = *this;
    p.eta = value;
    return p;
  }

  [[nodiscard]] ChainParams with_h(double value) const {
    ChainParams p = *this;
    p.h = value;
    return p;
  }

  bool operator==(const ChainParams&) const = default;
};

/// Throws std::invalid_argument when the parameter invariants are violated.
inline void validate(const ChainParams& p) {
  auto finite = [](double x) { return x == x && x - x == 0.0; };
  if (!finite(p.j1) || !finite(p.j2) || !finite(p.gamma1) || !finite(p.gamma2) ||
      !finite(p.h) || !finite(p.eta)) {
    throw std::invalid_argument("chain parameters must be finite");
  }
  if (p.h < 0.0) throw std::invalid_argument("h must be non-negative");
  if (p.eta < 0.0) throw std::invalid_argument("eta must be non-negative");
  if (p.n_sites < 4 || p.n_sites % 2 != 0) {
    throw std::invalid_argument("n_sites must be even and >= 4, got " +
                                std::to_string(p.n_sites));
  }
}

inline void require_isotropic(const ChainParams& p, const char* what) {
  if (!p.isotropic()) {
    throw std::invalid_argument(std::string(what) + " requires gamma1 = gamma2 = 0");
  }
}

}  // namespace ptchain
