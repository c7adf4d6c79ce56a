#pragma once

// Time-dependent master-equation coefficients alpha(t), beta(t) and the decay
// rate kappa(t) = 2 Re beta(t), analytically and by direct quadrature.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "cavneg/quadrature.hpp"
#include "cavneg/spectral.hpp"

namespace cavneg {

using Complex = std::complex<double>;

/// Bath description shared by all three cavities.
struct BathContext {
  SpectralModel model = Flat{};
  double delta = 0.0;   // omega_c - omega_bc, Lorentzian models only
  double nbar = 0.0;    // mean thermal photon number at omega_c
  double omega_c = 1.0;

  /// Bath-cavity resonance implied by the detuning.
  double omega_bc() const { return omega_c - delta; }
};

/// Throws ParameterError on an invalid model, negative nbar or non-finite
/// detuning, and for a nonzero detuning on an ohmic bath.
void require_valid(const BathContext& ctx);

struct Coefficients {
  Complex alpha{};
  Complex beta{};
  double kappa() const { return 2.0 * beta.real(); }
};

using CoefficientFn = std::function<Coefficients(double)>;

/// Value-semantic handle on t -> (alpha(t), beta(t)).
class RateCoefficients {
 public:
  RateCoefficients() = default;
  explicit RateCoefficients(CoefficientFn fn) : fn_(std::move(fn)) {}

  Coefficients operator()(double t) const { return fn_(t); }
  Complex alpha(double t) const { return fn_(t).alpha; }
  Complex beta(double t) const { return fn_(t).beta; }
  double kappa(double t) const { return fn_(t).kappa(); }
  explicit operator bool() const { return static_cast<bool>(fn_); }

  /// Constant Markovian coefficients alpha = kappa*nbar/2, beta = kappa*(nbar+1)/2.
  static RateCoefficients markovian(double kappa, double nbar);

 private:
  CoefficientFn fn_;
};

// ---- closed forms (zero temperature unless noted) ----

/// [alpha_L Gamma^2 / (delta^2 + Gamma^2)] [1 - e^{-Gamma t}(cos(delta t) - (delta/Gamma) sin(delta t))]
double kappa_single_lorentzian(const BathContext& ctx, double t);
double kappa_double_lorentzian(const BathContext& ctx, double t);
double kappa_bandgap_lorentzian(const BathContext& ctx, double t);

/// Ohmic-family rate with the s -> 1 limit taken as the mean of s = 1 -/+ 1e-6.
double kappa_ohmic(const BathContext& ctx, double t);

/// Inverse temperature beta_T with 1 / (exp(beta_T omega_c) - 1) = nbar.
/// Infinite for nbar = 0.
double inverse_temperature(double nbar, double omega_c = 1.0);

/// Planck occupation 1 / (exp(beta_T omega) - 1); zero for beta_T = inf.
double planck_occupation(double omega, double beta_T);

/// Finite-temperature Lorentzian coefficients (low-temperature closed form).
/// Double and band-gap models combine the single-Lorentzian coefficients with
/// their weights. With nbar = 0 this is the exact zero-temperature beta(t).
Coefficients alpha_beta_finite_t_lorentzian(const BathContext& ctx, double t);

// ---- quadrature oracle ----

enum class LorentzianKernel {
  /// Half-width Gamma, peak alpha_L/2pi: the kernel the closed forms integrate.
  DecayRate,
  /// Gamma^2 / ((w - w_bc)^2 + (Gamma/2)^2), exactly as `evaluate` returns.
  AsPrinted,
};

enum class ThermalProfile {
  /// Planck for ohmic baths, nbar held constant across Lorentzian/flat lines.
  Auto,
  Planck,
  Constant,
};

struct RateQuadratureOptions {
  QuadratureOptions quadrature{};
  LorentzianKernel lorentzian = LorentzianKernel::DecayRate;
  ThermalProfile thermal = ThermalProfile::Auto;
};

/// alpha(t) and beta(t) from the double integral over t1 and omega, with the
/// t1 integral done in closed form and the omega integral numerically.
/// Lorentzian and flat lines are integrated over the whole real axis, ohmic
/// densities over [0, inf).
Coefficients alpha_beta_quadrature(const BathContext& ctx, double t,
                                   const RateQuadratureOptions& options = {});

// ---- dispatch ----

/// Closed-form coefficients for any supported bath. Flat baths are Markovian
/// (constant); ohmic baths only at zero temperature.
Coefficients analytic_coefficients(const BathContext& ctx, double t);

RateCoefficients analytic_rates(const BathContext& ctx);
RateCoefficients quadrature_rates(const BathContext& ctx, const RateQuadratureOptions& options = {});

/// (1/width) * integral of kappa over [t0, t0 + width], composite Simpson.
double average_rate(const std::function<double(double)>& kappa, double t0, double width,
                    int intervals = 1000);

/// Rate coefficients sampled once on a uniform grid and linearly interpolated.
/// Grid nodes are returned exactly; the table is read-only after construction.
class RateTable {
 public:
  RateTable(const RateCoefficients& source, double t_end, double step);

  Coefficients operator()(double t) const;
  double step() const { return step_; }
  double t_end() const { return step_ * static_cast<double>(table_->size() - 1); }
  std::size_t size() const { return table_->size(); }

  /// Shares the table; cheap to copy into integrators and worker threads.
  RateCoefficients as_rates() const;

 private:
  double step_;
  std::shared_ptr<const std::vector<Coefficients>> table_;
};

}  // namespace cavneg
