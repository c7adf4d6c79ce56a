#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cavneg/errors.hpp"
#include "cavneg/hilbert.hpp"
#include "oracles.hpp"

using namespace cavneg;

namespace {

PureState ket(std::size_t k) {
  PureState psi{};
  psi[k] = 1.0;
  return psi;
}

bool same(const PureState& a, const PureState& b) {
  for (std::size_t k = 0; k < kDim; ++k)
    if (std::abs(a[k] - b[k]) > 1e-14) return false;
  return true;
}

Matrix8 commutator(const Matrix8& a, const Matrix8& b) { return a * b - b * a; }

}  // namespace

TEST_SUITE("hilbert") {
  TEST_CASE("basis ordering") {
    const Occupation expected[8] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                    {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    for (std::size_t k = 0; k < kDim; ++k) {
      CHECK(occupation(k) == expected[k]);
      CHECK(basis_index(expected[k]) == k);
    }
    CHECK(element_name(0, 7) == "rho18");
    CHECK(element_name(3, 3) == "rho44");
    CHECK_THROWS_AS(occupation(8), ParameterError);
    CHECK_THROWS_AS(basis_index({2, 0, 0}), ParameterError);
  }

  TEST_CASE("annihilation operators") {
    CHECK(same(apply_operator(annihilation(1), ket(1)), ket(0)));
    CHECK(same(apply_operator(annihilation(2), ket(7)), ket(5)));
    CHECK(same(apply_operator(annihilation(3), ket(4)), PureState{}));
    CHECK_THROWS_AS(annihilation(0), ParameterError);
    CHECK_THROWS_AS(annihilation(4), ParameterError);
    for (int i = 1; i <= 3; ++i) {
      const auto& a = annihilation(i);
      CHECK(max_abs_diff(a.adjoint() * a, number_operator(i)) == 0.0);
      CHECK(max_abs_diff(a * a, Matrix8{}) == 0.0);
      for (int j = 1; j <= 3; ++j) {
        if (i == j) continue;
        // Distinct cavities commute exactly on the truncated space.
        CHECK(max_abs_diff(commutator(a, annihilation(j).adjoint()), Matrix8{}) == 0.0);
      }
    }
    // [a, a^dagger] = 1 - 2n for a hard-core mode; it is 1 on the vacuum sector of that cavity.
    const auto& a1 = annihilation(1);
    const Matrix8 c = commutator(a1, a1.adjoint());
    for (std::size_t k = 0; k < kDim; ++k)
      CHECK(c(k, k).real() == (occupation(k)[0] == 0 ? 1.0 : -1.0));
  }

  TEST_CASE("initial states") {
    const auto w = initial_state(InitialKind::W);
    CHECK(std::abs(w.trace() - 1.0) < 1e-15);
    CHECK(std::abs((w * w).trace() - 1.0) < 1e-15);
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t c = 0; c < kDim; ++c) {
        const bool block = r >= 1 && r <= 3 && c >= 1 && c <= 3;
        CHECK(w(r, c) == Complex(block ? 1.0 / 3.0 : 0.0, 0.0));
      }
    const auto g = initial_state(InitialKind::GHZ);
    CHECK(g(0, 7) == Complex(0.5, 0.0));
    CHECK(g(7, 0) == Complex(0.5, 0.0));
    CHECK(g(0, 0) == Complex(0.5, 0.0));
    CHECK(g(7, 7) == Complex(0.5, 0.0));
    CHECK(max_abs_diff(projector(initial_pure_state(InitialKind::W)), w) < 1e-15);
    CHECK(parse_initial_kind("GHZ") == InitialKind::GHZ);
    CHECK(to_string(InitialKind::W) == "W");
    CHECK_THROWS_AS(parse_initial_kind("bell"), ParameterError);
  }

  TEST_CASE("partial transpose") {
    Matrix8 vac;
    vac(0, 0) = 1.0;
    CHECK(partial_transpose_first(vac) == vac);

    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
      const Matrix8 m = oracle::random_hermitian(rng);
      const Matrix8 pt = partial_transpose_first(m);
      CHECK(max_abs_diff(pt, oracle::tensor_partial_transpose(m)) == 0.0);
      CHECK(partial_transpose_first(pt) == m);
      CHECK(pt.hermiticity_error() < 1e-15);
      CHECK(std::abs(pt.trace() - m.trace()) < 1e-13);
    }

    const Matrix8 pt = partial_transpose_first(initial_state(InitialKind::GHZ));
    const std::size_t from = basis_index({1, 0, 0}), to = basis_index({0, 1, 1});
    CHECK(pt(from, to) == Complex(0.5, 0.0));
    CHECK(pt(to, from) == Complex(0.5, 0.0));
    CHECK(pt(0, 7) == Complex{});
  }

  TEST_CASE("Hermitian eigenvalues") {
    for (double v : hermitian_eigenvalues(Matrix8::identity())) CHECK(v == doctest::Approx(1.0));
    const std::array<double, 8> d = {5, 3, 8, 1, 2, 7, 6, 4};
    const auto e = hermitian_eigenvalues(Matrix8::diagonal(d));
    for (std::size_t k = 0; k < 8; ++k) CHECK(e[k] == doctest::Approx(static_cast<double>(k + 1)));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix8 m = oracle::random_hermitian(rng);
      const auto jac = hermitian_eigenvalues(m);
      const auto bis = oracle::bisection_eigenvalues(m);
      for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(jac[k] - bis[k]) < 1e-9);
      CHECK(std::abs(std::accumulate(jac.begin(), jac.end(), 0.0) - m.trace().real()) < 1e-10);
    }

    Matrix8 bad = Matrix8::identity();
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), ParameterError);
  }

  TEST_CASE("negativity") {
    CHECK(negativity(initial_state(InitialKind::W)) == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(negativity(initial_state(InitialKind::GHZ)) == doctest::Approx(1.0).epsilon(1e-12));
    Matrix8 vac;
    vac(0, 0) = 1.0;
    CHECK(negativity(vac) == 0.0);
    const auto ghz = negativity_detail(initial_state(InitialKind::GHZ));
    CHECK(ghz.negative_eigenvalues == 1);
    CHECK(ghz.spectrum[0] == doctest::Approx(-0.5));
  }

  TEST_CASE("negativity is invariant under local phases") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix8 rho = oracle::random_density(rng);
      const double theta[3] = {angle(rng), angle(rng), angle(rng)};
      std::array<Complex, 8> phase{};
      for (std::size_t k = 0; k < 8; ++k) {
        const auto n = occupation(k);
        phase[k] = std::polar(1.0, theta[0] * n[0] + theta[1] * n[1] + theta[2] * n[2]);
      }
      Matrix8 rotated;
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) rotated(r, c) = phase[r] * rho(r, c) * std::conj(phase[c]);
      CHECK(std::abs(negativity(rotated) - negativity(rho)) < 1e-12);
      const auto spec = negativity_detail(rho).spectrum;
      CHECK(std::abs(std::accumulate(spec.begin(), spec.end(), 0.0) - 1.0) < 1e-9);
    }
  }

  TEST_CASE("pure-state helpers") {
    const auto w = initial_pure_state(InitialKind::W);
    CHECK(norm_squared(w) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expectation(number_operator(2), w).real() == doctest::Approx(1.0 / 3.0));
    PureState small = w;
    for (auto& z : small) z *= 1e-3;
    CHECK(same(normalized(small), w));
    CHECK_THROWS_AS(normalized(PureState{}), NumericalError);
  }

  TEST_CASE("trace distance") {
    const auto w = initial_state(InitialKind::W);
    const auto g = initial_state(InitialKind::GHZ);
    CHECK(trace_distance(w, w) == doctest::Approx(0.0));
    CHECK(trace_distance(w, g) == doctest::Approx(1.0));
  }
}
