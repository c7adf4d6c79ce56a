#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "cavneg/hilbert.hpp"

namespace oracle {

using cavneg::Complex;
using cavneg::Matrix8;

inline Matrix8 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix8 m;
  for (std::size_t r = 0; r < 8; ++r) {
    m(r, r) = n(rng);
    for (std::size_t c = r + 1; c < 8; ++c) {
      const Complex z(n(rng), n(rng));
      m(r, c) = z;
      m(c, r) = std::conj(z);
    }
  }
  return m;
}

/// Random density matrix: G G^dagger / Tr, G with Gaussian entries.
inline Matrix8 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix8 g;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) g(r, c) = Complex(n(rng), n(rng));
  Matrix8 rho = g * g.adjoint();
  return rho * (1.0 / rho.trace().real());
}

/// Number of eigenvalues of Hermitian m below sigma, by Sylvester inertia of
/// the LDL^dagger factorization of m - sigma I (no pivoting).
inline int count_below(const Matrix8& m, double sigma) {
  std::array<std::array<Complex, 8>, 8> a{};
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) a[r][c] = m(r, c) - (r == c ? sigma : 0.0);
  int negatives = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    double d = a[k][k].real();
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++negatives;
    for (std::size_t i = k + 1; i < 8; ++i) {
      const Complex l = a[i][k] / d;
      for (std::size_t j = k + 1; j < 8; ++j) a[i][j] -= l * std::conj(a[j][k]);
    }
  }
  return negatives;
}

/// Ascending eigenvalues located by bisection on the inertia count.
inline std::array<double, 8> bisection_eigenvalues(const Matrix8& m) {
  double bound = 0.0;
  for (std::size_t r = 0; r < 8; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < 8; ++c) row += std::abs(m(r, c));
    bound = std::max(bound, row);
  }
  bound += 1.0;
  std::array<double, 8> out{};
  for (int k = 0; k < 8; ++k) {
    double lo = -bound, hi = bound;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * bound; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(m, mid) > k) hi = mid;
      else lo = mid;
    }
    out[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
  }
  return out;
}

/// Partial transpose on cavity 1 via an explicit rank-6 tensor. The basis
/// order is restated here rather than taken from the library.
inline Matrix8 tensor_partial_transpose(const Matrix8& rho) {
  constexpr int kOrder[8][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  int index[2][2][2];
  for (int k = 0; k < 8; ++k) index[kOrder[k][0]][kOrder[k][1]][kOrder[k][2]] = k;
  Complex t[2][2][2][2][2][2];
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      t[kOrder[r][0]][kOrder[r][1]][kOrder[r][2]][kOrder[c][0]][kOrder[c][1]][kOrder[c][2]] =
          rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Matrix8 out;
  for (int n1 = 0; n1 < 2; ++n1)
    for (int n2 = 0; n2 < 2; ++n2)
      for (int n3 = 0; n3 < 2; ++n3)
        for (int m1 = 0; m1 < 2; ++m1)
          for (int m2 = 0; m2 < 2; ++m2)
            for (int m3 = 0; m3 < 2; ++m3)
              out(static_cast<std::size_t>(index[n1][n2][n3]), static_cast<std::size_t>(index[m1][m2][m3])) =
                  t[m1][n2][n3][n1][m2][m3];
  return out;
}

/// Zero-temperature W-state negativity under identical amplitude damping,
/// x = exp(-integral of kappa).
inline double w_negativity_closed_form(double x) {
  return std::sqrt((1.0 - x) * (1.0 - x) + 8.0 * x * x / 9.0) - (1.0 - x);
}

}  // namespace oracle
