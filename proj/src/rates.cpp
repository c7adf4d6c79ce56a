#include "cavneg/rates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cavneg/detail/overloaded.hpp"
#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

using detail::overloaded;

constexpr double kOhmicLimitOffset = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("rate evaluated at negative time");
}

void require_zero_temperature(const BathContext& ctx) {
  if (ctx.nbar != 0.0) {
    throw ParameterError("closed-form kappa(t) is only available at zero temperature");
  }
}

double single_lorentzian_rate(double alpha_L, double Gamma, double delta, double t) {
  if (!(Gamma > 0.0)) throw ParameterError("Lorentzian width Gamma must be positive");
  const double prefactor = alpha_L * Gamma * Gamma / (delta * delta + Gamma * Gamma);
  const double envelope = std::exp(-Gamma * t);
  return prefactor *
         (1.0 - envelope * (std::cos(delta * t) - delta / Gamma * std::sin(delta * t)));
}

double ohmic_rate_at(double s, double alpha, double omega_cut, double t) {
  const double wt = omega_cut * t;
  const double angle = (s - 1.0) * std::atan(wt);
  const double damping = std::pow(1.0 + wt * wt, -(s - 1.0) / 2.0);
  return 0.5 * alpha * (1.0 - std::cos(angle) * std::tgamma(s - 1.0) * damping);
}

// Zero-temperature part of beta(t) for one Lorentzian:
// (alpha_L Gamma / 2) (1 - e^{-(Gamma - i delta) t}) / (Gamma - i delta).
// The phase sign follows the e^{i (omega_c - omega) t} kernel of the integral.
Complex lorentzian_beta0(double alpha_L, double Gamma, double delta, double t) {
  const Complex z{Gamma, -delta};
  return 0.5 * alpha_L * Gamma * (1.0 - std::exp(-z * t)) / z;
}

// Thermal alpha(t) for one Lorentzian. The second denominator is written
// 2 Gamma (Gamma + i delta) so that 2 Re beta reduces to
// alpha_L (1 - e^{-Gamma t}) (nbar cos(beta_T Gamma) + 1) at zero detuning.
Complex lorentzian_alpha(double alpha_L, double Gamma, double delta, double nbar, double beta_T,
                         double t) {
  if (nbar == 0.0) return {};
  const Complex i{0.0, 1.0};
  const double g2 = Gamma * Gamma;
  const Complex first = alpha_L * g2 * nbar / (2.0 * (delta * delta + g2)) *
                        (std::exp(i * delta * t) - 1.0);
  const Complex phase = std::exp(-i * beta_T * Gamma);
  const Complex second = alpha_L * g2 * nbar * phase / (2.0 * Gamma * Complex{Gamma, delta}) *
                         (1.0 - std::exp(-Gamma * t) * std::exp(-i * delta * t));
  return first + second;
}

Coefficients lorentzian_coefficients(double alpha_L, double Gamma, double delta, double nbar,
                                     double beta_T, double t) {
  const Complex a = lorentzian_alpha(alpha_L, Gamma, delta, nbar, beta_T, t);
  return {a, a + lorentzian_beta0(alpha_L, Gamma, delta, t)};
}

Coefficients combine(double w1, const Coefficients& c1, double w2, const Coefficients& c2) {
  return {w1 * c1.alpha + w2 * c2.alpha, w1 * c1.beta + w2 * c2.beta};
}

// (e^{i x t} - 1) / (i x) written without cancellation near x = 0.
Complex time_kernel(double x, double t) {
  const double h = 0.5 * x * t;
  const double sinc = std::abs(h) < 1e-8 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return t * std::polar(1.0, h) * sinc;
}

double kernel_lorentzian(double alpha_L, double Gamma, double omega_bc, double omega,
                         LorentzianKernel kind) {
  if (kind == LorentzianKernel::AsPrinted) {
    return lorentzian_term(alpha_L, Gamma, omega_bc, omega);
  }
  const double d = omega - omega_bc;
  return alpha_L / (2.0 * std::numbers::pi) * Gamma * Gamma / (d * d + Gamma * Gamma);
}

void add_lorentzian_points(std::vector<double>& pts, double center, double Gamma) {
  for (double k : {0.0, 1.0, 4.0, 16.0, 64.0}) {
    pts.push_back(center - k * Gamma);
    pts.push_back(center + k * Gamma);
  }
}

}  // namespace

void require_valid(const BathContext& ctx) {
  require_valid(ctx.model);
  if (!(ctx.nbar >= 0.0) || !std::isfinite(ctx.nbar)) {
    throw ParameterError("nbar must be finite and non-negative");
  }
  if (!std::isfinite(ctx.delta)) throw ParameterError("detuning must be finite");
  if (!(ctx.omega_c > 0.0)) throw ParameterError("omega_c must be positive");
  if (std::holds_alternative<OhmicFamily>(ctx.model) && ctx.delta != 0.0) {
    throw ParameterError("detuning is not used by ohmic baths and must be zero");
  }
}

RateCoefficients RateCoefficients::markovian(double kappa, double nbar) {
  const Coefficients c{Complex{0.5 * kappa * nbar, 0.0}, Complex{0.5 * kappa * (nbar + 1.0), 0.0}};
  return RateCoefficients([c](double) { return c; });
}

double kappa_single_lorentzian(const BathContext& ctx, double t) {
  require_time(t);
  require_zero_temperature(ctx);
  const auto& m = std::get<SingleLorentzian>(ctx.model);
  return single_lorentzian_rate(m.alpha_L, m.Gamma, ctx.delta, t);
}

double kappa_double_lorentzian(const BathContext& ctx, double t) {
  require_time(t);
  require_zero_temperature(ctx);
  const auto& m = std::get<DoubleLorentzian>(ctx.model);
  return m.W_D1 * single_lorentzian_rate(m.alpha_L1, m.Gamma1, ctx.delta, t) +
         m.W_D2 * single_lorentzian_rate(m.alpha_L2, m.Gamma2, ctx.delta, t);
}

double kappa_bandgap_lorentzian(const BathContext& ctx, double t) {
  require_time(t);
  require_zero_temperature(ctx);
  const auto& m = std::get<BandGapLorentzian>(ctx.model);
  return m.W_B1 * single_lorentzian_rate(m.alpha_L1, m.Gamma1, ctx.delta, t) -
         m.W_B2 * single_lorentzian_rate(m.alpha_L2, m.Gamma2, ctx.delta, t);
}

double kappa_ohmic(const BathContext& ctx, double t) {
  require_time(t);
  require_zero_temperature(ctx);
  const auto& m = std::get<OhmicFamily>(ctx.model);
  if (!(m.s > 0.0)) throw ParameterError("ohmic exponent s must be positive");
  if (std::abs(m.s - 1.0) < kOhmicLimitOffset) {
    return 0.5 * (ohmic_rate_at(1.0 - kOhmicLimitOffset, m.alpha, m.omega_cut, t) +
                  ohmic_rate_at(1.0 + kOhmicLimitOffset, m.alpha, m.omega_cut, t));
  }
  return ohmic_rate_at(m.s, m.alpha, m.omega_cut, t);
}

double inverse_temperature(double nbar, double omega_c) {
  if (!(nbar >= 0.0)) throw ParameterError("nbar must be non-negative");
  if (nbar == 0.0) return kInf;
  return std::log1p(1.0 / nbar) / omega_c;
}

double planck_occupation(double omega, double beta_T) {
  if (std::isinf(beta_T)) return 0.0;
  return 1.0 / std::expm1(beta_T * omega);
}

Coefficients alpha_beta_finite_t_lorentzian(const BathContext& ctx, double t) {
  require_time(t);
  if (!(ctx.nbar >= 0.0)) throw ParameterError("nbar must be non-negative");
  const double beta_T = inverse_temperature(ctx.nbar, ctx.omega_c);
  const double d = ctx.delta;
  const double n = ctx.nbar;
  return std::visit(
      overloaded{
          [&](const SingleLorentzian& m) {
            return lorentzian_coefficients(m.alpha_L, m.Gamma, d, n, beta_T, t);
          },
          [&](const DoubleLorentzian& m) {
            return combine(m.W_D1, lorentzian_coefficients(m.alpha_L1, m.Gamma1, d, n, beta_T, t),
                           m.W_D2, lorentzian_coefficients(m.alpha_L2, m.Gamma2, d, n, beta_T, t));
          },
          [&](const BandGapLorentzian& m) {
            return combine(m.W_B1, lorentzian_coefficients(m.alpha_L1, m.Gamma1, d, n, beta_T, t),
                           -m.W_B2,
                           lorentzian_coefficients(m.alpha_L2, m.Gamma2, d, n, beta_T, t));
          },
          [](const auto&) -> Coefficients {
            throw ParameterError("finite-temperature closed form requires a Lorentzian bath");
          },
      },
      ctx.model);
}

Coefficients alpha_beta_quadrature(const BathContext& ctx, double t,
                                   const RateQuadratureOptions& options) {
  require_time(t);
  require_valid(ctx);
  if (t == 0.0) return {};

  const double wc = ctx.omega_c;
  const double wbc = ctx.omega_bc();

  if (const auto* flat = std::get_if<Flat>(&ctx.model)) {
    // Delta-correlated bath: nothing left to integrate numerically.
    return {Complex{0.5 * flat->kappa * ctx.nbar, 0.0},
            Complex{0.5 * flat->kappa * (ctx.nbar + 1.0), 0.0}};
  }

  const bool ohmic = std::holds_alternative<OhmicFamily>(ctx.model);
  const bool planck = options.thermal == ThermalProfile::Planck ||
                      (options.thermal == ThermalProfile::Auto && ohmic);
  const double beta_T = inverse_temperature(ctx.nbar, wc);
  const LorentzianKernel kind = options.lorentzian;

  std::vector<double> pts;
  std::function<double(double)> density;
  std::visit(overloaded{
                 [&](const SingleLorentzian& m) {
                   density = [=](double w) {
                     return kernel_lorentzian(m.alpha_L, m.Gamma, wbc, w, kind);
                   };
                   add_lorentzian_points(pts, wbc, m.Gamma);
                 },
                 [&](const DoubleLorentzian& m) {
                   density = [=](double w) {
                     return m.W_D1 * kernel_lorentzian(m.alpha_L1, m.Gamma1, wbc, w, kind) +
                            m.W_D2 * kernel_lorentzian(m.alpha_L2, m.Gamma2, wbc, w, kind);
                   };
                   add_lorentzian_points(pts, wbc, m.Gamma1);
                   add_lorentzian_points(pts, wbc, m.Gamma2);
                 },
                 [&](const BandGapLorentzian& m) {
                   density = [=](double w) {
                     return m.W_B1 * kernel_lorentzian(m.alpha_L1, m.Gamma1, wbc, w, kind) -
                            m.W_B2 * kernel_lorentzian(m.alpha_L2, m.Gamma2, wbc, w, kind);
                   };
                   add_lorentzian_points(pts, wbc, m.Gamma1);
                   add_lorentzian_points(pts, wbc, m.Gamma2);
                 },
                 [&](const OhmicFamily& m) {
                   density = [=](double w) {
                     return m.alpha * std::pow(m.omega_cut, 1.0 - m.s) * std::pow(w, m.s) *
                            std::exp(-w / m.omega_cut);
                   };
                   for (double k : {0.0, 0.25, 1.0, 4.0, 16.0, 48.0}) pts.push_back(k * m.omega_cut);
                 },
                 [](const Flat&) {},
             },
             ctx.model);

  pts.push_back(wc);
  if (ohmic) {
    std::erase_if(pts, [](double w) { return w < 0.0; });
    pts.push_back(0.0);
  } else {
    pts.push_back(-kInf);
  }
  pts.push_back(kInf);

  const double flat_nbar = ctx.nbar;
  auto occupation = [&](double w) {
    return planck ? planck_occupation(w, beta_T) : flat_nbar;
  };

  const auto beta_part = integrate(
      [&](double w) { return density(w) * (occupation(w) + 1.0) * time_kernel(wc - w, t); }, pts,
      options.quadrature);
  Complex alpha{};
  if (ctx.nbar > 0.0) {
    alpha = integrate([&](double w) { return density(w) * occupation(w) * time_kernel(wc - w, t); },
                      pts, options.quadrature)
                .value;
  }
  return {alpha, beta_part.value};
}

Coefficients analytic_coefficients(const BathContext& ctx, double t) {
  require_time(t);
  return std::visit(
      overloaded{
          [&](const Flat& m) {
            return Coefficients{Complex{0.5 * m.kappa * ctx.nbar, 0.0},
                                Complex{0.5 * m.kappa * (ctx.nbar + 1.0), 0.0}};
          },
          [&](const OhmicFamily&) {
            if (ctx.nbar != 0.0) {
              throw ParameterError(
                  "ohmic baths have no finite-temperature closed form; use quadrature rates");
            }
            return Coefficients{Complex{}, Complex{0.5 * kappa_ohmic(ctx, t), 0.0}};
          },
          [&](const auto&) { return alpha_beta_finite_t_lorentzian(ctx, t); },
      },
      ctx.model);
}

RateCoefficients analytic_rates(const BathContext& ctx) {
  require_valid(ctx);
  return RateCoefficients([ctx](double t) { return analytic_coefficients(ctx, t); });
}

RateCoefficients quadrature_rates(const BathContext& ctx, const RateQuadratureOptions& options) {
  require_valid(ctx);
  return RateCoefficients(
      [ctx, options](double t) { return alpha_beta_quadrature(ctx, t, options); });
}

double average_rate(const std::function<double(double)>& kappa, double t0, double width,
                    int intervals) {
  if (!(width > 0.0)) throw ParameterError("averaging window must have positive width");
  int n = std::max(intervals, 1000);
  if (n % 2 != 0) ++n;
  const double h = width / n;
  double sum = kappa(t0) + kappa(t0 + width);
  for (int k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * kappa(t0 + k * h);
  return sum * h / 3.0 / width;
}

RateTable::RateTable(const RateCoefficients& source, double t_end, double step) : step_(step) {
  if (!(step > 0.0)) throw ParameterError("rate table step must be positive");
  if (!(t_end >= 0.0)) throw ParameterError("rate table end time must be non-negative");
  const auto n = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9)) + 1;
  std::vector<Coefficients> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) values[k] = source(static_cast<double>(k) * step);
  table_ = std::make_shared<const std::vector<Coefficients>>(std::move(values));
}

Coefficients RateTable::operator()(double t) const {
  const auto& v = *table_;
  const double x = t / step_;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9 && nearest >= 0.0 && nearest < static_cast<double>(v.size())) {
    return v[static_cast<std::size_t>(nearest)];
  }
  if (x < 0.0 || x > static_cast<double>(v.size() - 1)) {
    throw ParameterError("rate table queried outside its time grid");
  }
  const auto k = static_cast<std::size_t>(std::floor(x));
  const double f = x - static_cast<double>(k);
  const auto& a = v[k];
  const auto& b = v[std::min(k + 1, v.size() - 1)];
  return {a.alpha + f * (b.alpha - a.alpha), a.beta + f * (b.beta - a.beta)};
}

RateCoefficients RateTable::as_rates() const {
  return RateCoefficients([table = *this](double t) { return table(t); });
}

}  // namespace cavneg
