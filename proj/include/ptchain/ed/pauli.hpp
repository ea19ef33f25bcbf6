#pragma once

// Pauli strings on n spin-1/2 sites.
//
// Basis states are Kronecker-ordered: site 1 is the most significant bit,
// bit value 0 is sigma^z = +1.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>
#include <utility>
#include <vector>

namespace ptchain::ed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = std::uint32_t;

enum class Pauli { I, X, Y, Z };

struct PauliFactor {
  int site;  // 1-based
  Pauli op;
};

struct PauliTerm {
  Complex coeff;
  std::vector<PauliFactor> factors;
};

[[nodiscard]] inline Eigen::Matrix2cd pauli_matrix(Pauli op) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (op) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

[[nodiscard]] inline Index site_bit(int site, int n_sites) {
  return Index{1} << (n_sites - site);
}

/// Accumulates coeff * (sigma_{s1} x ... x sigma_{sn}) into `m`.
///
/// Every Pauli matrix has one non-zero per column, so the Kronecker product
/// does too: column j maps to row j ^ flip_mask with a product of per-site
/// phases. This is the Kronecker product evaluated column by column.
inline void add_pauli_term(Matrix& m, int n_sites, const PauliTerm& term) {
  const Index dim = Index{1} << n_sites;
  if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("matrix size mismatch");
  Index flip = 0;
  std::vector<std::pair<Index, Eigen::Matrix2cd>> factors;
  for (const auto& f : term.factors) {
    if (f.site < 1 || f.site > n_sites) throw std::out_of_range("Pauli site out of range");
    const Index bit = site_bit(f.site, n_sites);
    if (f.op == Pauli::X || f.op == Pauli::Y) flip ^= bit;
    factors.emplace_back(bit, pauli_matrix(f.op));
  }
  for (Index col = 0; col < dim; ++col) {
    const Index row = col ^ flip;
    Complex value = term.coeff;
    for (const auto& [bit, sigma] : factors) {
      value *= sigma((row & bit) ? 1 : 0, (col & bit) ? 1 : 0);
    }
    m(row, col) += value;
  }
}

/// Literal dense Kronecker product of the full string (identity on unlisted
/// sites). Exponential memory per term; used to cross-check add_pauli_term.
[[nodiscard]] inline Matrix dense_pauli_string(int n_sites, const PauliTerm& term) {
  std::vector<Pauli> ops(static_cast<std::size_t>(n_sites), Pauli::I);
  for (const auto& f : term.factors) {
    auto& slot = ops.at(static_cast<std::size_t>(f.site - 1));
    if (slot != Pauli::I) throw std::invalid_argument("repeated site in Pauli string");
    slot = f.op;
  }
  Matrix out = Matrix::Identity(1, 1);
  for (Pauli op : ops) {
    Matrix next = Eigen::kroneckerProduct(out, pauli_matrix(op)).eval();
    out = std::move(next);
  }
  return term.coeff * out;
}

}  // namespace ptchain::ed
