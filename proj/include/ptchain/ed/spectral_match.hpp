#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace ptchain::ed {

/// Worst residual of a greedy nearest-neighbour matching between two
/// eigenvalue multisets. Infinite when the sizes differ.
///
/// Both sides are sorted by (Re, Im); each element of `a` claims the closest
/// unclaimed element of `b`, searching outward in Re until the Re gap alone
/// exceeds the best distance found.
[[nodiscard]] inline double multiset_residual(std::span<const std::complex<double>> a,
                                              std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto lex = [](std::complex<double> x, std::complex<double> y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  };
  std::vector<std::complex<double>> lhs(a.begin(), a.end()), rhs(b.begin(), b.end());
  std::sort(lhs.begin(), lhs.end(), lex);
  std::sort(rhs.begin(), rhs.end(), lex);
  std::vector<bool> used(rhs.size(), false);

  double worst = 0.0;
  for (const auto& x : lhs) {
    const auto start = static_cast<std::ptrdiff_t>(
        std::lower_bound(rhs.begin(), rhs.end(), x, lex) - rhs.begin());
    double best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t best_idx = -1;
    const auto n = static_cast<std::ptrdiff_t>(rhs.size());
    for (std::ptrdiff_t i = start; i < n; ++i) {
      if (rhs[i].real() - x.real() > best) break;
      if (!used[i] && std::abs(rhs[i] - x) < best) best = std::abs(rhs[i] - x), best_idx = i;
    }
    for (std::ptrdiff_t i = start - 1; i >= 0; --i) {
      if (x.real() - rhs[i].real() > best) break;
      if (!used[i] && std::abs(rhs[i] - x) < best) best = std::abs(rhs[i] - x), best_idx = i;
    }
    used[static_cast<std::size_t>(best_idx)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

/// Residual between a multiset and its complex conjugate.
[[nodiscard]] inline double conjugation_residual(std::span<const std::complex<double>> values) {
  std::vector<std::complex<double>> conj(values.size());
  std::transform(values.begin(), values.end(), conj.begin(),
                 [](std::complex<double> z) { return std::conj(z); });
  return multiset_residual(values, conj);
}

}  // namespace ptchain::ed
