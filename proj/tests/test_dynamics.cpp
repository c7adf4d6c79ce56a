#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cavneg/dynamics.hpp"
#include "cavneg/errors.hpp"
#include "oracles.hpp"

using namespace cavneg;

namespace {

BathContext lorentzian_single(double alpha_L, double Gamma, double delta) {
  BathContext ctx;
  ctx.model = SingleLorentzian{alpha_L, Gamma, 1.0 - delta};
  ctx.delta = delta;
  return ctx;
}

EvolutionConfig scenario(const BathContext& ctx, InitialKind kind, double t_end) {
  EvolutionConfig cfg;
  cfg.initial = initial_state(kind);
  cfg.rates = analytic_rates(ctx);
  cfg.t_end = t_end;
  return cfg;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("vanishing coefficients give a vanishing derivative") {
    std::mt19937_64 rng(1);
    const Matrix8 rho = oracle::random_density(rng);
    CHECK(rhs_superoperator(rho, 0.0, 0.0) == Matrix8{});
    CHECK(rhs_elementwise(Matrix8{}, {0.3, 0.1}, {0.7, -0.2}, 1.0, 2.0) == Matrix8{});
    Matrix8 vac;
    vac(0, 0) = 1.0;
    CHECK(max_abs_diff(rhs_superoperator(vac, 0.0, 0.5), Matrix8{}) == 0.0);
  }

  TEST_CASE("element equations match the operator form") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    double worst = 0.0, worst_printed = 0.0, printed_hopping_gap = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix8 rho = oracle::random_hermitian(rng);
      const Complex a = random_complex(rng), b = random_complex(rng);
      const double x12 = n(rng), x23 = n(rng);
      const Matrix8 ref = rhs_superoperator(rho, a, b, x12, x23);
      worst = std::max(worst, max_abs_diff(rhs_elementwise(rho, a, b, x12, x23), ref));
      worst_printed = std::max(worst_printed, max_abs_diff(rhs_elementwise_printed(rho, a, b), rhs_superoperator(rho, a, b)));
      printed_hopping_gap =
          std::max(printed_hopping_gap, max_abs_diff(rhs_elementwise_printed(rho, a, b, x12, x23), ref));
      CHECK(ref.hermiticity_error() < 1e-12);
      CHECK(std::abs(ref.trace()) < 1e-12);
    }
    CHECK(worst < 1e-12);
    CHECK(worst_printed < 1e-12);
    MESSAGE("typeset hopping terms differ from the commutator by up to " << printed_hopping_gap << " ("
                                                                        << hopping_corrections().size()
                                                                        << " corrections applied)");
    CHECK(printed_hopping_gap > 1e-3);
  }

  TEST_CASE("single element examples") {
    const auto w = initial_state(InitialKind::W);
    const double kappa = 0.8;
    CHECK(rhs_elementwise_printed(w, 0.0, kappa / 2.0)(0, 0).real() == doctest::Approx(kappa).epsilon(1e-14));
    const auto g = initial_state(InitialKind::GHZ);
    const Complex beta{0.4, 0.3};
    const Complex d18 = rhs_elementwise_printed(g, 0.0, beta)(0, 7);
    CHECK(std::abs(d18 - (-3.0) * std::conj(beta) * 0.5) < 1e-15);
  }

  TEST_CASE("Lindblad reduction") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix8 rho = oracle::random_hermitian(rng);
      const double kappa = 0.1 + std::abs(random_complex(rng).real());
      const double nbar = std::abs(random_complex(rng).imag());
      const double x12 = random_complex(rng).real(), x23 = random_complex(rng).real();
      const Matrix8 l = lindblad_markovian_rhs(rho, kappa, nbar, x12, x23);
      const Matrix8 e = rhs_superoperator(rho, kappa * nbar / 2.0, kappa * (nbar + 1.0) / 2.0, x12, x23);
      CHECK(max_abs_diff(l, e) < 1e-12);
    }
    Matrix8 vac;
    vac(0, 0) = 1.0;
    CHECK(lindblad_markovian_rhs(vac, 1.0, 0.0) == Matrix8{});
    const double d11 = lindblad_markovian_rhs(vac, 1.3, 0.2)(0, 0).real();
    CHECK(d11 == doctest::Approx(-3.0 * 1.3 * 0.2).epsilon(1e-14));
    CHECK(d11 < 0.0);
  }

  TEST_CASE("frozen dynamics") {
    EvolutionConfig cfg;
    cfg.initial = initial_state(InitialKind::GHZ);
    cfg.rates = RateCoefficients::markovian(0.0, 0.0);
    cfg.t_end = 2.0;
    for (const auto& s : integrate(cfg)) CHECK(s.rho == cfg.initial);
  }

  TEST_CASE("Markovian W negativity closed form") {
    EvolutionConfig cfg;
    cfg.t_end = 10.0;
    cfg.sample_every = 20;
    const auto series = negativity_series(cfg);
    REQUIRE(series.times.size() == 501);
    for (std::size_t k = 0; k < series.times.size(); k += 10) {
      const double x = std::exp(-series.times[k]);
      CHECK(std::abs(series.negativity[k] - oracle::w_negativity_closed_form(x)) < 1e-6);
    }
    CHECK(series.times[100] == doctest::Approx(2.0));
    CHECK(series.negativity[100] == doctest::Approx(0.0094).epsilon(0.01));
    CHECK(series.negativity[0] == doctest::Approx(0.9428).epsilon(1e-4));
    CHECK(series.max_negative_eigenvalues == 1);
  }

  TEST_CASE("step halving is converged") {
    auto cfg = scenario(lorentzian_single(2.0, 0.1, 0.0), InitialKind::W, 12.0);
    const auto coarse = negativity_series(cfg);
    cfg.dt = 5e-4;
    cfg.sample_every = 20;
    const auto fine = negativity_series(cfg);
    REQUIRE(coarse.times.size() == fine.times.size());
    CHECK(std::abs(coarse.negativity.back() - fine.negativity.back()) < 1e-6);
    REQUIRE(coarse.death_time);
    CHECK(*coarse.death_time == doctest::Approx(5.0).epsilon(0.2));
  }

  TEST_CASE("zero hopping is bitwise identical") {
    auto cfg = scenario(lorentzian_single(6.0, 0.1, 1.0), InitialKind::W, 3.0);
    const auto plain = integrate(cfg);
    const auto hopping = integrate(cfg, [&](double t, const DensityMatrix& rho) {
      const auto c = cfg.rates(t);
      return rhs_superoperator(rho, c.alpha, c.beta, 0.0, 0.0);
    });
    REQUIRE(plain.size() == hopping.size());
    for (std::size_t k = 0; k < plain.size(); ++k) CHECK(plain[k].rho == hopping[k].rho);
  }

  TEST_CASE("detuned bath revives entanglement inside negative-rate windows") {
    const auto series = negativity_series(scenario(lorentzian_single(6.0, 0.1, 1.0), InitialKind::W, 20.0));
    int increases = 0;
    const std::size_t n = series.times.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (!(series.negativity[k + 1] > series.negativity[k])) continue;
      ++increases;
      bool negative_nearby = false;
      for (std::size_t j = k == 0 ? 0 : k - 1; j <= std::min(n - 1, k + 2); ++j)
        negative_nearby = negative_nearby || series.kappa[j] < 0.0;
      CHECK(negative_nearby);
    }
    CHECK(increases > 0);
  }

  TEST_CASE("resonant baths decay monotonically") {
    BathContext dl;
    dl.model = DoubleLorentzian{2.0, 2.0, 0.1, 0.01, 1.0, 0.5, 0.5};
    BathContext bl;
    bl.model = BandGapLorentzian{2.0, 2.0, 0.1, 0.01, 1.0, 2.0, 1.0};
    for (const auto& ctx : {lorentzian_single(2.0, 0.1, 0.0), dl, bl}) {
      const auto s = negativity_series(scenario(ctx, InitialKind::W, 12.0));
      for (std::size_t k = 0; k + 1 < s.times.size(); ++k) CHECK(s.negativity[k + 1] <= s.negativity[k] + 1e-12);
    }
  }

  TEST_CASE("thermal GHZ reaches sudden death") {
    EvolutionConfig cfg;
    cfg.initial = initial_state(InitialKind::GHZ);
    cfg.rates = RateCoefficients::markovian(1.0, 0.5);
    cfg.t_end = 5.0;
    const auto s = negativity_series(cfg);
    CHECK(s.negativity.back() == 0.0);
    REQUIRE(s.death_time);
    CHECK(*s.death_time < 5.0);
  }

  TEST_CASE("flat EME and Lindblad trajectories coincide") {
    EvolutionConfig cfg;
    cfg.initial = initial_state(InitialKind::GHZ);
    cfg.rates = RateCoefficients::markovian(1.0, 0.1);
    cfg.xi12 = 0.7;
    cfg.xi23 = 0.3;
    cfg.t_end = 4.0;
    const auto eme = integrate(cfg);
    const auto lind = integrate(cfg, lindblad_rhs(1.0, 0.1, 0.7, 0.3));
    REQUIRE(eme.size() == lind.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < eme.size(); ++k) worst = std::max(worst, max_abs_diff(eme[k].rho, lind[k].rho));
    CHECK(worst < 1e-8);
  }

  TEST_CASE("trace and Hermiticity are preserved") {
    auto cfg = scenario(lorentzian_single(6.0, 0.1, 1.0), InitialKind::GHZ, 20.0);
    cfg.xi12 = 0.5;
    for (const auto& s : integrate(cfg)) {
      CHECK(std::abs(s.rho.trace() - 1.0) < 1e-12);
      CHECK(s.rho.hermiticity_error() < 1e-8);
    }
  }

  TEST_CASE("unstable integration is reported") {
    EvolutionConfig cfg;
    cfg.rates = RateCoefficients::markovian(400.0, 0.0);
    cfg.dt = 0.05;
    cfg.t_end = 20.0;
    CHECK_THROWS_AS(integrate(cfg), NumericalError);
    EvolutionConfig skew;
    skew.t_end = 0.1;
    CHECK_THROWS_AS(integrate(skew, [](double, const DensityMatrix& rho) { return rho * Complex(0.0, 1.0); }),
                    NumericalError);
  }

  TEST_CASE("invalid configurations") {
    EvolutionConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(require_valid(cfg), ParameterError);
    cfg = {};
    cfg.t_end = 1e-4;
    CHECK_THROWS_AS(require_valid(cfg), ParameterError);
    cfg = {};
    cfg.sample_every = 0;
    CHECK_THROWS_AS(require_valid(cfg), ParameterError);
    cfg = {};
    cfg.xi12 = std::nan("");
    CHECK_THROWS_AS(require_valid(cfg), ParameterError);
    cfg = {};
    cfg.rates = RateCoefficients{};
    CHECK_THROWS_AS(require_valid(cfg), ParameterError);
    cfg = {};
    cfg.t_end = 1.0;
    cfg.dt = 0.3;
    CHECK(step_count(cfg) == 4);
  }

  TEST_CASE("W and GHZ curves share their shape under a detuned bath") {
    for (double alpha : {6.0, 2.0}) {
      const auto ctx = lorentzian_single(alpha, 0.1, 1.0);
      const auto w = negativity_series(scenario(ctx, InitialKind::W, 20.0));
      const auto g = negativity_series(scenario(ctx, InitialKind::GHZ, 20.0));
      const double r = correlation(w.negativity, g.negativity);
      MESSAGE("alpha_L = " << alpha << ": W/GHZ negativity correlation " << r);
      CHECK(r > 0.99);
    }
  }

  TEST_CASE("initial negativity is reproduced by a short run") {
    EvolutionConfig cfg;
    cfg.t_end = 1e-3;
    const auto s = negativity_series(cfg);
    CHECK(s.negativity.front() == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(s.times.size() == 2);
  }
}
