#pragma once

// Jordan-Wigner free-fermion reconstruction of the many-body spectrum and the
// 4x4 Bogoliubov block at fixed momentum.
//
// With sigma^z = 1 - 2 c^dag c, a bond (l, l+1) becomes
//   J (c_l^dag c_{l+1} + h.c.) + g (c_l^dag c_{l+1}^dag + c_{l+1} c_l),
// and site l carries the on-site energy h - i eta (-1)^l. On a ring the
// wrap-around bond picks up -S, so the S = +1 sector has antiperiodic and the
// S = -1 sector periodic fermions.

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ptchain/dispersion.hpp"
#include "ptchain/ed/exact_diag.hpp"

namespace ptchain::ed {

enum class FermionParity { Even, Odd };  // S = +1, S = -1

/// Allowed k = (m + offset) 2 pi / N, m = 0..N/2-1, offset 1/2 for the even
/// sector and 0 for the odd one. Values lie in [0, pi).
[[nodiscard]] inline std::vector<double> sector_momenta(int n_sites, FermionParity parity) {
  const double offset = parity == FermionParity::Even ? 0.5 : 0.0;
  std::vector<double> ks;
  for (int m = 0; m < n_sites / 2; ++m) ks.push_back((m + offset) * 2.0 * pi / n_sites);
  return ks;
}

namespace detail {

// Energies split by fermion-number parity: [0] even, [1] odd.
using ParitySplit = std::array<std::vector<Complex>, 2>;

[[nodiscard]] inline ParitySplit combine(const ParitySplit& a, const ParitySplit& b) {
  ParitySplit out;
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (const auto& x : a[pa])
        for (const auto& y : b[pb]) out[(pa + pb) % 2].push_back(x + y);
  return out;
}

// Self-conjugate cell momentum (k = 0 or pi/2): two modes a, b. The even
// states {|0>, a^dag b^dag |0>} give +/- sqrt(lambda_k), the odd states
// {a^dag|0>, b^dag|0>} give +/- sqrt(mu_k), both measured from h.
[[nodiscard]] inline ParitySplit self_conjugate_block(const ChainParams& p, double k) {
  const Complex pairing = std::sqrt(Complex(lambda_k(p, k), 0.0));
  const Complex hopping = std::sqrt(Complex(mu_k(p, k), 0.0));
  return {{{pairing, -pairing}, {hopping, -hopping}}};
}

// Pair (k, pi - k): four quasiparticles, energies sum_a Lambda_a (n_1a + n_2a - 1).
// The quasiparticle vacuum carries zero momentum and is therefore even.
[[nodiscard]] inline ParitySplit pair_block(const ChainParams& p, double k) {
  const auto [minus, plus] = branch_energies(p, k);
  ParitySplit out;
  for (int occ = 0; occ < 16; ++occ) {
    const int n1m = occ & 1, n2m = (occ >> 1) & 1, n1p = (occ >> 2) & 1, n2p = (occ >> 3) & 1;
    const Complex e = minus * double(n1m + n2m - 1) + plus * double(n1p + n2p - 1);
    out[(n1m + n2m + n1p + n2p) % 2].push_back(e);
  }
  return out;
}

[[nodiscard]] inline std::vector<Complex> periodic_sector(const ChainParams& p, FermionParity parity) {
  ParitySplit acc{{{Complex(0.0)}, {}}};
  for (double k : sector_momenta(p.n_sites, parity)) {
    if (k == 0.0 || std::abs(k - pi / 2.0) < 1e-12) {
      acc = combine(acc, self_conjugate_block(p, k));
    } else if (k < pi / 2.0) {
      acc = combine(acc, pair_block(p, k));
    }
  }
  return std::move(acc[parity == FermionParity::Even ? 0 : 1]);
}

// Picks one representative from each (e, -e) pair of BdG eigenvalues.
[[nodiscard]] inline std::vector<Complex> pair_up(const std::vector<Complex>& ev) {
  std::vector<bool> used(ev.size(), false);
  std::vector<Complex> reps;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = ev.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ev.size(); ++j) {
      if (!used[j] && std::abs(ev[j] + ev[i]) < dist) dist = std::abs(ev[j] + ev[i]), best = j;
    }
    used[best] = true;
    reps.push_back(ev[i]);
  }
  return reps;
}

}  // namespace detail

/// Real-space BdG matrix [[A, B], [C, -A^T]] of the open chain, with
/// H = 1/2 Psi^dag M Psi + 1/2 tr A - h N / 2 and Psi = (c_1..c_N, c_1^dag..c_N^dag).
[[nodiscard]] inline Matrix open_chain_bdg(const ChainParams& p) {
  const int n = p.n_sites;
  Matrix a = Matrix::Zero(n, n), b = Matrix::Zero(n, n), c = Matrix::Zero(n, n);
  for (int l = 1; l <= n; ++l) {
    const double stagger = l % 2 == 0 ? 1.0 : -1.0;
    a(l - 1, l - 1) = Complex(p.h, -p.eta * stagger);
  }
  for (int l = 1; l < n; ++l) {
    const auto [j, g] = bond_couplings(p, l);
    a(l - 1, l) = a(l, l - 1) = j;
    b(l - 1, l) = g;
    b(l, l - 1) = -g;
    c(l, l - 1) = g;
    c(l - 1, l) = -g;
  }
  Matrix m(2 * n, 2 * n);
  m << a, b, c, -a.transpose();
  return m;
}

/// Many-body spectrum rebuilt from single-particle energies.
///
/// Periodic: each parity sector uses its own momentum grid and the closed-form
/// branches; occupation patterns are filtered by fermion parity. Open: the
/// 2N x 2N BdG matrix is diagonalized and every sign pattern of its N
/// quasiparticle energies is summed.
[[nodiscard]] inline std::vector<Complex> free_fermion_assembly(const ChainParams& p,
                                                                Boundary boundary) {
  validate(p);
  if (p.n_sites > max_sites) throw std::invalid_argument("free-fermion assembly capped at 14 sites");

  if (boundary == Boundary::Periodic) {
    auto out = detail::periodic_sector(p, FermionParity::Even);
    const auto odd = detail::periodic_sector(p, FermionParity::Odd);
    out.insert(out.end(), odd.begin(), odd.end());
    return out;
  }

  const Matrix bdg = open_chain_bdg(p);
  Eigen::ComplexEigenSolver<Matrix> solver(bdg, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("BdG eigensolver did not converge");
  const std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  const auto modes = detail::pair_up(ev);

  const Complex offset = 0.5 * bdg.topLeftCorner(p.n_sites, p.n_sites).trace() - 0.5 * p.h * p.n_sites;
  std::vector<Complex> out{offset};
  for (const auto& e : modes) {
    std::vector<Complex> next;
    next.reserve(out.size() * 2);
    for (const auto& x : out) {
      next.push_back(x + 0.5 * e);
      next.push_back(x - 0.5 * e);
    }
    out = std::move(next);
  }
  return out;
}

struct BogoliubovBlock {
  Momentum k;
  Eigen::Matrix4cd matrix;
  std::array<Complex, 4> eigenvalues;
  double gram_deviation;  // ||V^dag V - I||_F over unit-normalized right eigenvectors
};

/// Single-particle block in the basis (a_k, b_k, a_{-k}^dag, b_{-k}^dag), where
/// a and b are the two sublattices and the cell momentum is q = 2k.
/// Eigenvalues are {+/- Lambda_-(k), +/- Lambda_+(k)}.
[[nodiscard]] inline BogoliubovBlock bogoliubov_block(const ChainParams& p, Momentum k) {
  const double q = 2.0 * k.value();
  const Complex i(0.0, 1.0);
  const Complex ea(p.h, p.eta), eb(p.h, -p.eta);
  auto hop = [&](double x) {
    Eigen::Matrix2cd a;
    a << ea, p.j1 + p.j2 * std::exp(-i * x), p.j1 + p.j2 * std::exp(i * x), eb;
    return a;
  };
  auto create = [&](double x) { return p.gamma1 - p.gamma2 * std::exp(-i * x); };
  auto annihilate = [&](double x) { return p.gamma1 - p.gamma2 * std::exp(i * x); };

  Eigen::Matrix2cd pair_up, pair_down;
  pair_up << 0.0, create(q), -create(-q), 0.0;
  pair_down << 0.0, -annihilate(-q), annihilate(q), 0.0;

  Eigen::Matrix4cd h;
  h << hop(q), pair_up, pair_down, -hop(-q).transpose();

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(h, true);
  if (solver.info() != Eigen::Success) throw std::runtime_error("block eigensolver did not converge");
  Eigen::Matrix4cd v = solver.eigenvectors();
  for (int c = 0; c < 4; ++c) v.col(c).normalize();
  const double gram = (v.adjoint() * v - Eigen::Matrix4cd::Identity()).norm();

  BogoliubovBlock out{k, h, {}, gram};
  for (int c = 0; c < 4; ++c) out.eigenvalues[static_cast<std::size_t>(c)] = solver.eigenvalues()(c);
  return out;
}

}  // namespace ptchain::ed
