#include "cavneg/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

constexpr std::array<Occupation, kDim> kBasis = {{
    {0, 0, 0},
    {1, 0, 0},
    {0, 1, 0},
    {0, 0, 1},
    {1, 1, 0},
    {1, 0, 1},
    {0, 1, 1},
    {1, 1, 1},
}};

constexpr int kMaxSweeps = 64;
constexpr double kOffDiagonalTol = 1e-12;

std::array<Operator, 3> build_annihilators() {
  std::array<Operator, 3> ops;
  for (int c = 0; c < kCavities; ++c) {
    for (std::size_t col = 0; col < kDim; ++col) {
      Occupation n = kBasis[col];
      if (n[c] == 0) continue;
      n[c] = 0;
      ops[c](basis_index(n), col) = 1.0;
    }
  }
  return ops;
}

const std::array<Operator, 3>& annihilators() {
  static const auto ops = build_annihilators();
  return ops;
}

const std::array<Operator, 3>& number_operators() {
  static const auto ops = [] {
    std::array<Operator, 3> out;
    for (int c = 0; c < kCavities; ++c) {
      const auto& a = annihilators()[c];
      out[c] = a.adjoint() * a;
    }
    return out;
  }();
  return ops;
}

double off_diagonal_norm(const Matrix8& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p, q), p < q. With m(p,q) = |m_pq| e^{i phi}
// the unitary is U = D R, D = diag(.., e^{-i phi} at q, ..), R a real Givens rotation.
void rotate(Matrix8& m, std::size_t p, std::size_t q) {
  const double apq = std::abs(m(p, q));
  if (apq == 0.0) return;
  const Complex phase = m(p, q) / apq;
  const double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex cphase = std::conj(phase);

  // M <- M U
  for (std::size_t k = 0; k < kDim; ++k) {
    const Complex mkp = m(k, p);
    const Complex mkq = m(k, q);
    m(k, p) = c * mkp - s * cphase * mkq;
    m(k, q) = s * mkp + c * cphase * mkq;
  }
  // M <- U^dagger M
  for (std::size_t k = 0; k < kDim; ++k) {
    const Complex mpk = m(p, k);
    const Complex mqk = m(q, k);
    m(p, k) = c * mpk - s * phase * mqk;
    m(q, k) = s * mpk + c * phase * mqk;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = m(p, p).real();
  m(q, q) = m(q, q).real();
}

}  // namespace

Occupation occupation(std::size_t index) {
  if (index >= kDim) throw ParameterError("basis index out of range");
  return kBasis[index];
}

std::size_t basis_index(const Occupation& n) {
  for (int v : n)
    if (v != 0 && v != 1) throw ParameterError("occupations are restricted to 0 or 1");
  for (std::size_t k = 0; k < kDim; ++k)
    if (kBasis[k] == n) return k;
  throw ParameterError("occupation triple not in basis");
}

std::string element_name(std::size_t row, std::size_t col) {
  return "rho" + std::to_string(row + 1) + std::to_string(col + 1);
}

Matrix8 Matrix8::identity() {
  Matrix8 m;
  for (std::size_t k = 0; k < kDim; ++k) m(k, k) = 1.0;
  return m;
}

Matrix8 Matrix8::diagonal(std::span<const double, kDim> values) {
  Matrix8 m;
  for (std::size_t k = 0; k < kDim; ++k) m(k, k) = values[k];
  return m;
}

Matrix8 Matrix8::adjoint() const {
  Matrix8 out;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex Matrix8::trace() const {
  Complex t{};
  for (std::size_t k = 0; k < kDim; ++k) t += (*this)(k, k);
  return t;
}

double Matrix8::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double Matrix8::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = r; c < kDim; ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

Matrix8& Matrix8::operator+=(const Matrix8& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix8& Matrix8::operator-=(const Matrix8& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix8& Matrix8::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix8 operator*(const Matrix8& a, const Matrix8& b) {
  Matrix8 out;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t k = 0; k < kDim; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < kDim; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

double max_abs_diff(const Matrix8& a, const Matrix8& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.data_.size(); ++k) e = std::max(e, std::abs(a.data_[k] - b.data_[k]));
  return e;
}

const Operator& annihilation(int cavity) {
  if (cavity < 1 || cavity > kCavities) throw ParameterError("cavity index must be 1, 2 or 3");
  return annihilators()[cavity - 1];
}

const Operator& number_operator(int cavity) {
  if (cavity < 1 || cavity > kCavities) throw ParameterError("cavity index must be 1, 2 or 3");
  return number_operators()[cavity - 1];
}

PureState initial_pure_state(InitialKind kind) {
  PureState psi{};
  if (kind == InitialKind::W) {
    const double amp = 1.0 / std::sqrt(3.0);
    psi[1] = psi[2] = psi[3] = amp;
  } else {
    const double amp = 1.0 / std::sqrt(2.0);
    psi[0] = psi[7] = amp;
  }
  return psi;
}

DensityMatrix initial_state(InitialKind kind) {
  // Entries set directly so the 1/3 and 1/2 values are exact.
  DensityMatrix rho;
  if (kind == InitialKind::W) {
    for (std::size_t r = 1; r <= 3; ++r)
      for (std::size_t c = 1; c <= 3; ++c) rho(r, c) = 1.0 / 3.0;
  } else {
    rho(0, 0) = rho(0, 7) = rho(7, 0) = rho(7, 7) = 0.5;
  }
  return rho;
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "W") return InitialKind::W;
  if (name == "GHZ") return InitialKind::GHZ;
  throw ParameterError("initial state must be W or GHZ, got '" + name + "'");
}

std::string to_string(InitialKind kind) { return kind == InitialKind::W ? "W" : "GHZ"; }

DensityMatrix projector(const PureState& psi) {
  DensityMatrix rho;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
  return rho;
}

PureState apply_operator(const Operator& op, const PureState& psi) {
  PureState out{};
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) out[r] += op(r, c) * psi[c];
  return out;
}

double norm_squared(const PureState& psi) {
  double s = 0.0;
  for (const auto& z : psi) s += std::norm(z);
  return s;
}

PureState normalized(const PureState& psi, double floor) {
  const double n = std::sqrt(norm_squared(psi));
  if (!(n > floor)) throw NumericalError("state norm collapsed below " + std::to_string(floor));
  PureState out = psi;
  for (auto& z : out) z /= n;
  return out;
}

Complex expectation(const Operator& op, const PureState& psi) {
  const PureState v = apply_operator(op, psi);
  Complex s{};
  for (std::size_t k = 0; k < kDim; ++k) s += std::conj(psi[k]) * v[k];
  return s;
}

DensityMatrix partial_transpose_first(const DensityMatrix& rho) {
  DensityMatrix out;
  for (std::size_t r = 0; r < kDim; ++r) {
    const Occupation n = kBasis[r];
    for (std::size_t c = 0; c < kDim; ++c) {
      const Occupation m = kBasis[c];
      const std::size_t src_r = basis_index({m[0], n[1], n[2]});
      const std::size_t src_c = basis_index({n[0], m[1], m[2]});
      out(r, c) = rho(src_r, src_c);
    }
  }
  return out;
}

std::array<double, kDim> hermitian_eigenvalues(const Matrix8& input, double hermitian_tol) {
  const double herm = input.hermiticity_error();
  if (herm > hermitian_tol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M - M^dagger| = " << herm;
    throw ParameterError(msg.str());
  }
  Matrix8 m = input;
  // Symmetrize so rounding in the input cannot bias the rotations.
  for (std::size_t r = 0; r < kDim; ++r) {
    m(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < kDim; ++c) {
      const Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  const double scale = std::max(1.0, m.frobenius_norm());
  int sweep = 0;
  while (off_diagonal_norm(m) >= kOffDiagonalTol * scale) {
    if (++sweep > kMaxSweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p < kDim; ++p)
      for (std::size_t q = p + 1; q < kDim; ++q) rotate(m, p, q);
  }
  std::array<double, kDim> eig{};
  for (std::size_t k = 0; k < kDim; ++k) eig[k] = m(k, k).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

NegativityDetail negativity_detail(const DensityMatrix& rho) {
  NegativityDetail d;
  d.spectrum = hermitian_eigenvalues(partial_transpose_first(rho));
  double negative_sum = 0.0;
  for (double l : d.spectrum) {
    if (l < 0.0) negative_sum += l;
    if (l < -1e-12) ++d.negative_eigenvalues;
  }
  d.negativity = std::max(0.0, -2.0 * negative_sum);
  return d;
}

double negativity(const DensityMatrix& rho) { return negativity_detail(rho).negativity; }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const auto eig = hermitian_eigenvalues(a - b);
  double s = 0.0;
  for (double l : eig) s += std::abs(l);
  return 0.5 * s;
}

}  // namespace cavneg
