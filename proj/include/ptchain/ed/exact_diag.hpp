#pragma once

// Brute-force many-body oracle: the full 2^N matrix of the chain assembled
// from Pauli strings, diagonalized densely within each Z2 parity sector.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/ed/pauli.hpp"
#include "ptchain/ed/spectral_match.hpp"
#include "ptchain/params.hpp"

namespace ptchain::ed {

enum class Boundary { Periodic, Open };

inline constexpr int max_sites = 14;

struct ManyBodyMatrix {
  int n_sites;
  Boundary boundary;
  Matrix entries;

  [[nodiscard]] Index dimension() const { return Index{1} << n_sites; }
};

/// Coupling pair on bond (l, l+1): (J1, g1) for odd l, (J2, g2) for even l.
[[nodiscard]] inline std::pair<double, double> bond_couplings(const ChainParams& p, int l) {
  return l % 2 == 1 ? std::pair{p.j1, p.gamma1} : std::pair{p.j2, p.gamma2};
}

[[nodiscard]] inline std::vector<PauliTerm> hamiltonian_terms(const ChainParams& p,
                                                              Boundary boundary) {
  const int n = p.n_sites;
  std::vector<PauliTerm> terms;
  const int bonds = boundary == Boundary::Periodic ? n : n - 1;
  for (int l = 1; l <= bonds; ++l) {
    const int r = l % n + 1;
    const auto [j, g] = bond_couplings(p, l);
    terms.push_back({0.5 * (j + g), {{l, Pauli::X}, {r, Pauli::X}}});
    terms.push_back({0.5 * (j - g), {{l, Pauli::Y}, {r, Pauli::Y}}});
  }
  for (int l = 1; l <= n; ++l) {
    const double stagger = l % 2 == 0 ? 1.0 : -1.0;
    terms.push_back({Complex(-0.5 * p.h, 0.5 * p.eta * stagger), {{l, Pauli::Z}}});
  }
  return terms;
}

[[nodiscard]] inline ManyBodyMatrix build_hamiltonian(const ChainParams& p, Boundary boundary) {
  validate(p);
  if (p.n_sites > max_sites) {
    throw std::invalid_argument("exact diagonalization supports at most " +
                                std::to_string(max_sites) + " sites");
  }
  ManyBodyMatrix m{p.n_sites, boundary, Matrix::Zero(Index{1} << p.n_sites, Index{1} << p.n_sites)};
  for (const auto& term : hamiltonian_terms(p, boundary)) add_pauli_term(m.entries, p.n_sites, term);
  return m;
}

// S = (x) sigma^z is diagonal: +1 on states with an even number of flipped bits.
[[nodiscard]] inline bool even_parity_state(Index state) { return std::popcount(state) % 2 == 0; }

[[nodiscard]] inline double hermiticity_residual(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// max |[M, S]_ij| = max |M_ij (s_j - s_i)|.
[[nodiscard]] inline double parity_commutator_residual(const Matrix& m) {
  double worst = 0.0;
  for (Index j = 0; j < static_cast<Index>(m.cols()); ++j)
    for (Index i = 0; i < static_cast<Index>(m.rows()); ++i)
      if (even_parity_state(i) != even_parity_state(j)) worst = std::max(worst, 2.0 * std::abs(m(i, j)));
  return worst;
}

[[nodiscard]] inline Index reverse_sites(Index state, int n_sites) {
  Index out = 0;
  for (int b = 0; b < n_sites; ++b)
    if (state & (Index{1} << b)) out |= Index{1} << (n_sites - 1 - b);
  return out;
}

/// max |P conj(M) P - M| with P the site-reversal permutation.
[[nodiscard]] inline double pt_residual(const ManyBodyMatrix& m) {
  double worst = 0.0;
  const Index dim = m.dimension();
  for (Index j = 0; j < dim; ++j) {
    const Index pj = reverse_sites(j, m.n_sites);
    for (Index i = 0; i < dim; ++i) {
      const Complex mirrored = std::conj(m.entries(reverse_sites(i, m.n_sites), pj));
      worst = std::max(worst, std::abs(mirrored - m.entries(i, j)));
    }
  }
  return worst;
}

struct EDResult {
  std::vector<Complex> eigenvalues;  // even sector followed by odd sector
  std::vector<Complex> even_sector;  // S = +1
  std::vector<Complex> odd_sector;   // S = -1
  bool fully_real = true;
  double max_imag = 0.0;
};

inline constexpr double ed_reality_tol = 1e-8;

namespace detail {

[[nodiscard]] inline std::vector<Complex> sector_eigenvalues(const Matrix& block) {
  std::vector<Complex> out;
  if (block.rows() == 0) return out;
  const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
  if (hermiticity_residual(block) <= 1e-14 * scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      out.emplace_back(solver.eigenvalues()(i), 0.0);
  } else {
    Eigen::ComplexEigenSolver<Matrix> solver(block, false);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("complex eigensolver did not converge");
    }
    out.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  }
  return out;
}

}  // namespace detail

/// Full complex spectrum, computed sector by sector (S is diagonal, so the
/// split is an index partition). Throws if the eigenvalue sum drifts from the
/// trace by more than 1e-8 * 2^N.
[[nodiscard]] inline EDResult complex_spectrum(const ManyBodyMatrix& m, double reality_tol = ed_reality_tol) {
  if (m.n_sites > max_sites) throw std::invalid_argument("matrix exceeds exact-diagonalization cap");
  std::vector<Index> even, odd;
  for (Index s = 0; s < m.dimension(); ++s) (even_parity_state(s) ? even : odd).push_back(s);

  auto extract = [&](const std::vector<Index>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix block(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) block(r, c) = m.entries(idx[r], idx[c]);
    return block;
  };

  EDResult result;
  result.even_sector = detail::sector_eigenvalues(extract(even));
  result.odd_sector = detail::sector_eigenvalues(extract(odd));
  result.eigenvalues = result.even_sector;
  result.eigenvalues.insert(result.eigenvalues.end(), result.odd_sector.begin(),
                            result.odd_sector.end());

  Complex sum = 0.0;
  for (const auto& z : result.eigenvalues) {
    sum += z;
    result.max_imag = std::max(result.max_imag, std::abs(z.imag()));
  }
  if (std::abs(sum - m.entries.trace()) > 1e-8 * static_cast<double>(m.dimension())) {
    throw std::runtime_error("eigenvalue sum does not reproduce the trace");
  }
  result.fully_real = result.max_imag < reality_tol;
  return result;
}

/// Bisection on eta for the largest value whose finite-chain spectrum is real.
/// Keeps j1, j2, gamma1, gamma2, h and the site count of `templ`.
[[nodiscard]] inline double reality_threshold_ed(const ChainParams& templ, int n_sites,
                                                 double eta_max, double tol,
                                                 Boundary boundary = Boundary::Periodic) {
  if (n_sites > 12) throw std::invalid_argument("reality_threshold_ed supports at most 12 sites");
  if (!(eta_max > 0.0) || !(tol > 0.0)) throw std::invalid_argument("need eta_max > 0 and tol > 0");
  ChainParams p = templ;
  p.n_sites = n_sites;
  auto real_at = [&](double eta) {
    return complex_spectrum(build_hamiltonian(p.with_eta(eta), boundary)).fully_real;
  };
  if (!real_at(0.0)) throw std::logic_error("degenerate bracket: spectrum complex at eta = 0");
  if (real_at(eta_max)) return eta_max;
  double lo = 0.0, hi = eta_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (real_at(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace ptchain::ed
