#pragma once

// Three cavities truncated to at most one photon each: an 8-dimensional
// space with the ordering |000>,|100>,|010>,|001>,|110>,|101>,|011>,|111>.
// Indices are 0-based internally; reports use 1-based rho_jk names.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

namespace cavneg {

using Complex = std::complex<double>;

inline constexpr std::size_t kDim = 8;
inline constexpr int kCavities = 3;

using Occupation = std::array<int, 3>;

/// Basis index (0-based) -> occupation triple (n1, n2, n3).
Occupation occupation(std::size_t index);
/// Occupation triple -> 0-based basis index. Throws ParameterError on non-binary entries.
std::size_t basis_index(const Occupation& n);
/// "rho11" ... "rho88" naming of element (row, col).
std::string element_name(std::size_t row, std::size_t col);

/// Dense 8x8 complex matrix, row-major.
class Matrix8 {
 public:
  Matrix8() { data_.fill(Complex{}); }

  static Matrix8 identity();
  static Matrix8 diagonal(std::span<const double, kDim> values);

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * kDim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * kDim + c]; }

  Matrix8 adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max |M - M^dagger| entry.
  double hermiticity_error() const;

  Matrix8& operator+=(const Matrix8& o);
  Matrix8& operator-=(const Matrix8& o);
  Matrix8& operator*=(Complex s);

  friend Matrix8 operator+(Matrix8 a, const Matrix8& b) { return a += b; }
  friend Matrix8 operator-(Matrix8 a, const Matrix8& b) { return a -= b; }
  friend Matrix8 operator*(Matrix8 a, Complex s) { return a *= s; }
  friend Matrix8 operator*(Complex s, Matrix8 a) { return a *= s; }
  friend Matrix8 operator*(const Matrix8& a, const Matrix8& b);
  friend bool operator==(const Matrix8&, const Matrix8&) = default;

  /// Largest absolute entry difference.
  friend double max_abs_diff(const Matrix8& a, const Matrix8& b);

 private:
  std::array<Complex, kDim * kDim> data_;
};

using Operator = Matrix8;
using DensityMatrix = Matrix8;
using PureState = std::array<Complex, kDim>;

/// a_i for cavity i in {1, 2, 3}. Throws ParameterError otherwise.
const Operator& annihilation(int cavity);
/// a_i^dagger a_i, diagonal.
const Operator& number_operator(int cavity);

enum class InitialKind { W, GHZ };

PureState initial_pure_state(InitialKind kind);
DensityMatrix initial_state(InitialKind kind);
InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

DensityMatrix projector(const PureState& psi);
PureState apply_operator(const Operator& op, const PureState& psi);
double norm_squared(const PureState& psi);
/// Throws NumericalError when the norm is below `floor`.
PureState normalized(const PureState& psi, double floor = 1e-12);
/// <psi| op |psi>.
Complex expectation(const Operator& op, const PureState& psi);

/// Partial transpose on the first cavity:
/// <n1 n2 n3| rho^PT |m1 m2 m3> = <m1 n2 n3| rho |n1 m2 m3>.
DensityMatrix partial_transpose_first(const DensityMatrix& rho);

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic complex Jacobi
/// rotations, iterated until the off-diagonal Frobenius norm is below 1e-12
/// (relative to max(1, ||M||)). Throws ParameterError if M is not Hermitian
/// within `hermitian_tol`, NumericalError if the sweeps do not converge.
std::array<double, kDim> hermitian_eigenvalues(const Matrix8& m, double hermitian_tol = 1e-8);

struct NegativityDetail {
  double negativity = 0.0;
  int negative_eigenvalues = 0;
  std::array<double, kDim> spectrum{};
};

/// max(0, -2 * sum of negative eigenvalues of the first-cavity partial transpose).
double negativity(const DensityMatrix& rho);
NegativityDetail negativity_detail(const DensityMatrix& rho);

/// 1/2 * trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace cavneg
