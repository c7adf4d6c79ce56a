#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cavneg/errors.hpp"
#include "cavneg/rates.hpp"

using namespace cavneg;

namespace {

BathContext single(double alpha_L, double Gamma, double delta, double nbar = 0.0) {
  BathContext ctx;
  ctx.model = SingleLorentzian{alpha_L, Gamma, 1.0 - delta};
  ctx.delta = delta;
  ctx.nbar = nbar;
  return ctx;
}

BathContext fig3_double(double delta = 0.0, double alpha = 2.0) {
  BathContext ctx;
  ctx.model = DoubleLorentzian{alpha, alpha, 0.1, 0.01, 1.0 - delta, 0.5, 0.5};
  ctx.delta = delta;
  return ctx;
}

BathContext fig3_bandgap(double delta = 0.0, double alpha = 2.0) {
  BathContext ctx;
  ctx.model = BandGapLorentzian{alpha, alpha, 0.1, 0.01, 1.0 - delta, 2.0, 1.0};
  ctx.delta = delta;
  return ctx;
}

BathContext ohmic(double s, double alpha, double omega_cut) {
  BathContext ctx;
  ctx.model = OhmicFamily{s, alpha, omega_cut};
  return ctx;
}

std::pair<double, double> extrema(const BathContext& ctx, double t_end) {
  double lo = 0.0, hi = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double k_t = analytic_coefficients(ctx, t_end * k / 20000.0).kappa();
    lo = std::min(lo, k_t);
    hi = std::max(hi, k_t);
  }
  return {lo, hi};
}

}  // namespace

TEST_SUITE("rates") {
  TEST_CASE("single Lorentzian closed form") {
    CHECK(kappa_single_lorentzian(single(2.0, 0.1, 0.0), 0.0) == 0.0);
    CHECK(kappa_single_lorentzian(single(6.0, 0.1, 1.0), 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kappa_single_lorentzian(single(2.0, 0.1, 0.0), 10.0) ==
          doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
    CHECK(kappa_single_lorentzian(single(2.0, 0.1, 0.0), 10.0) == doctest::Approx(1.2642).epsilon(1e-4));
    CHECK_THROWS_AS(kappa_single_lorentzian(single(2.0, 0.0, 0.0), 1.0), ParameterError);
  }

  TEST_CASE("time averages over the first ten units") {
    const auto avg = [](const BathContext& ctx) {
      return average_rate([&](double t) { return analytic_coefficients(ctx, t).kappa(); }, 0.0, 10.0);
    };
    CHECK(avg(fig3_double()) == doctest::Approx(0.4163).epsilon(1e-4));
    CHECK(avg(single(2.0, 0.1, 0.0)) == doctest::Approx(0.7358).epsilon(1e-4));
    // Exact averages of 2(1 - e^{-G t}) over [0, 10]: 2 e^{-1} and 2(1 - 10(1 - e^{-0.1})).
    const double a1 = 2.0 * std::exp(-1.0);
    const double a2 = 2.0 * (1.0 - 10.0 * (1.0 - std::exp(-0.1)));
    CHECK(avg(single(2.0, 0.1, 0.0)) == doctest::Approx(a1).epsilon(1e-10));
    CHECK(avg(fig3_double()) == doctest::Approx(0.5 * a1 + 0.5 * a2).epsilon(1e-10));
    CHECK(avg(fig3_bandgap()) == doctest::Approx(2.0 * a1 - a2).epsilon(1e-10));
    CHECK(avg(fig3_bandgap()) == doctest::Approx(1.37).epsilon(0.01));
  }

  TEST_CASE("detuned Lorentzian rate extrema") {
    const auto [lo_s, hi_s] = extrema(single(6.0, 0.1, 1.0), 20.0);
    CHECK(hi_s >= 0.52);
    CHECK(hi_s <= 0.64);
    CHECK(lo_s >= -0.34);
    CHECK(lo_s <= -0.22);
    const auto [lo_d, hi_d] = extrema(fig3_double(1.0, 6.0), 20.0);
    CHECK(hi_d >= 0.25);
    CHECK(hi_d <= 0.35);
    CHECK(lo_d >= -0.25);
    CHECK(lo_d <= -0.15);
  }

  TEST_CASE("weighted combinations are exact") {
    const auto dl = fig3_double(1.0, 6.0);
    const auto bl = fig3_bandgap(1.0, 6.0);
    const auto s1 = single(6.0, 0.1, 1.0);
    const auto s2 = single(6.0, 0.01, 1.0);
    for (int k = 0; k <= 100; ++k) {
      const double t = 0.2 * k;
      const double a = kappa_single_lorentzian(s1, t), b = kappa_single_lorentzian(s2, t);
      CHECK(kappa_double_lorentzian(dl, t) == doctest::Approx(0.5 * a + 0.5 * b).epsilon(1e-13));
      CHECK(kappa_bandgap_lorentzian(bl, t) == doctest::Approx(2.0 * a - b).epsilon(1e-13));
    }
    BathContext same;
    same.model = DoubleLorentzian{2.0, 2.0, 0.1, 0.1, 1.0, 0.5, 0.5};
    for (double t : {0.0, 0.5, 3.0, 17.0})
      CHECK(kappa_double_lorentzian(same, t) ==
            doctest::Approx(kappa_single_lorentzian(single(2.0, 0.1, 0.0), t)).epsilon(1e-15));
  }

  TEST_CASE("sign structure") {
    for (const auto& ctx : {single(2.0, 0.1, 0.0), fig3_double(), fig3_bandgap()})
      for (int k = 0; k <= 400; ++k) CHECK(analytic_coefficients(ctx, 0.05 * k).kappa() >= 0.0);
    for (const auto& ctx : {single(6.0, 0.1, 1.0), fig3_double(1.0, 6.0), fig3_bandgap(5.0, 6.0)})
      CHECK(extrema(ctx, 20.0).first < 0.0);
  }

  TEST_CASE("ohmic family closed form") {
    CHECK(kappa_ohmic(ohmic(3.0, 1.0, 15.0), 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kappa_ohmic(ohmic(3.0, 1.0, 15.0), 1e4) == doctest::Approx(0.5).epsilon(1e-6));
    // At face value the sub-ohmic rate does not vanish at t = 0: G(-1/2) = -2 sqrt(pi).
    CHECK(kappa_ohmic(ohmic(0.5, 0.1, 2.0), 0.0) ==
          doctest::Approx(0.05 * (1.0 + 2.0 * std::sqrt(M_PI))).epsilon(1e-12));
    const double k1 = kappa_ohmic(ohmic(1.0, 0.6, 10.0), 1.0);
    CHECK(std::isfinite(k1));
    CHECK(k1 == doctest::Approx(0.5 * (kappa_ohmic(ohmic(1.0 - 1e-3, 0.6, 10.0), 1.0) +
                                       kappa_ohmic(ohmic(1.0 + 1e-3, 0.6, 10.0), 1.0)))
                    .epsilon(1e-5));
    CHECK_THROWS_AS(kappa_ohmic(ohmic(0.0, 1.0, 1.0), 1.0), ParameterError);
  }

  TEST_CASE("ohmic closed form against quadrature is reported") {
    for (const auto& ctx : {ohmic(0.5, 0.1, 2.0), ohmic(1.0, 0.6, 10.0), ohmic(3.0, 1.0, 15.0)}) {
      double worst = 0.0;
      for (double t : {0.0, 0.5, 2.0, 10.0})
        worst = std::max(worst, std::abs(kappa_ohmic(ctx, t) - alpha_beta_quadrature(ctx, t).kappa()));
      MESSAGE("ohmic s=" << std::get<OhmicFamily>(ctx.model).s << ": closed form vs quadrature, max |dk| = "
                         << worst);
    }
    // The oracle's long-time rate is the golden-rule value 2 pi J(omega_c); the
    // closed form tends to alpha / 2 instead.
    const auto sup = ohmic(3.0, 1.0, 15.0);
    const double golden = 2.0 * M_PI * evaluate(sup.model, 1.0);
    const double late = alpha_beta_quadrature(sup, 200.0).kappa();
    CHECK(late == doctest::Approx(golden).epsilon(1e-2));
    MESSAGE("super-ohmic long-time rate: quadrature " << late << ", closed form " << kappa_ohmic(sup, 200.0));
  }

  TEST_CASE("finite temperature Lorentzian") {
    for (double t : {0.0, 1.0, 7.5}) {
      const auto c = alpha_beta_finite_t_lorentzian(single(2.0, 0.1, 0.7), t);
      CHECK(c.alpha == Complex{});
      const auto q = alpha_beta_quadrature(single(2.0, 0.1, 0.7), t);
      CHECK(std::abs(c.beta - q.beta) < 1e-6);
    }
    const double nbar = 0.1;
    const double bT = inverse_temperature(nbar);
    CHECK(1.0 / (std::exp(bT) - 1.0) == doctest::Approx(nbar).epsilon(1e-14));
    for (double t : {0.0, 0.5, 5.0, 10.0}) {
      const auto c = alpha_beta_finite_t_lorentzian(single(2.0, 0.1, 0.0, nbar), t);
      const double expect = 2.0 * (1.0 - std::exp(-0.1 * t)) * (nbar * std::cos(bT * 0.1) + 1.0);
      CHECK(c.kappa() == doctest::Approx(expect).epsilon(1e-12));
    }
    const double q = alpha_beta_quadrature(single(2.0, 0.1, 0.0, nbar), 10.0).kappa();
    const double a = alpha_beta_finite_t_lorentzian(single(2.0, 0.1, 0.0, nbar), 10.0).kappa();
    MESSAGE("finite-T closed form vs quadrature at t=10: " << a << " vs " << q << " (|d| = "
                                                           << std::abs(a - q) << ")");
    CHECK_THROWS_AS(alpha_beta_finite_t_lorentzian(single(2.0, 0.1, 0.0, -0.1), 1.0), ParameterError);
  }

  TEST_CASE("quadrature oracle basics") {
    const auto z = alpha_beta_quadrature(single(2.0, 0.1, 1.0), 0.0);
    CHECK(z.alpha == Complex{});
    CHECK(z.beta == Complex{});
    BathContext flat;
    flat.model = Flat{0.8};
    CHECK(alpha_beta_quadrature(flat, 5.0).kappa() == doctest::Approx(0.8));
    for (double t : {0.5, 1.0, 5.0, 10.0}) {
      const auto ctx = single(2.0, 0.1, 0.0);
      CHECK(std::abs(alpha_beta_quadrature(ctx, t).kappa() - kappa_single_lorentzian(ctx, t)) < 1e-6);
    }
  }

  TEST_CASE("printed Lorentzian kernel discrepancy is reported") {
    RateQuadratureOptions printed;
    printed.lorentzian = LorentzianKernel::AsPrinted;
    const auto ctx = single(2.0, 0.1, 0.0);
    const double q = alpha_beta_quadrature(ctx, 10.0, printed).kappa();
    MESSAGE("printed kernel at t=10: " << q << " vs closed form " << kappa_single_lorentzian(ctx, 10.0));
    CHECK(q == doctest::Approx(8.0 * (1.0 - std::exp(-0.5))).epsilon(1e-5));
  }

  TEST_CASE("closed forms agree with quadrature on random parameter sets") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coupling(0.5, 6.0), width1(0.05, 0.2), width2(0.005, 0.04),
        detuning(0.0, 5.0);
    for (int set = 0; set < 8; ++set) {
      const double a1 = coupling(rng), a2 = coupling(rng), g1 = width1(rng), g2 = width2(rng), d = detuning(rng);
      BathContext ctxs[3];
      ctxs[0] = single(a1, g1, d);
      ctxs[1].model = DoubleLorentzian{a1, a2, g1, g2, 1.0 - d, 0.4, 0.6};
      ctxs[2].model = BandGapLorentzian{a1, a1, g1, g2, 1.0 - d, 2.0, 1.0};
      ctxs[1].delta = ctxs[2].delta = d;
      for (const auto& ctx : ctxs) {
        for (int k = 0; k <= 10; ++k) {
          const double t = 2.0 * k;
          const double a = analytic_coefficients(ctx, t).kappa();
          const double q = alpha_beta_quadrature(ctx, t).kappa();
          CHECK(std::abs(a - q) < 1e-4 * std::max(1.0, std::abs(a)));
        }
      }
    }
  }

  TEST_CASE("zero temperature has no upward coefficient") {
    for (const auto& ctx : {single(2.0, 0.1, 1.0), fig3_double(), fig3_bandgap(), ohmic(3.0, 1.0, 15.0)})
      for (double t : {0.0, 1.0, 4.0}) {
        CHECK(analytic_coefficients(ctx, t).alpha == Complex{});
        CHECK(analytic_coefficients(ctx, 0.0).kappa() == doctest::Approx(0.0).epsilon(1e-12));
      }
  }

  TEST_CASE("Markovian coefficients and averages") {
    const auto r = RateCoefficients::markovian(1.5, 0.2);
    CHECK(r.alpha(3.0).real() == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(r.alpha(3.0).imag() == 0.0);
    CHECK(r.beta(3.0).real() == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(r.kappa(0.0) == doctest::Approx(1.8));
    CHECK(average_rate([](double) { return 0.37; }, 2.0, 5.0) == doctest::Approx(0.37).epsilon(1e-14));
  }

  TEST_CASE("rate table interpolation") {
    const auto src = analytic_rates(single(6.0, 0.1, 1.0));
    const RateTable table(src, 5.0, 0.01);
    // One node past t_end so the last RK4 stage stays on the grid.
    CHECK(table.size() == 502);
    CHECK(table.t_end() >= 5.0);
    for (int k = 0; k <= 500; k += 7) CHECK(table(0.01 * k).beta == src(0.01 * k).beta);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double t = 0.005 * k + 0.0013;
      worst = std::max(worst, std::abs(table(t).kappa() - src.kappa(t)));
    }
    CHECK(worst < 1e-4);
    const auto rates = table.as_rates();
    CHECK(rates.kappa(2.5) == table(2.5).kappa());
  }

  TEST_CASE("invalid contexts") {
    auto bad = ohmic(1.0, 0.6, 10.0);
    bad.delta = 1.0;
    CHECK_THROWS_AS(require_valid(bad), ParameterError);
    CHECK_THROWS_AS(require_valid(single(2.0, 0.1, 0.0, -1.0)), ParameterError);
  }
}
