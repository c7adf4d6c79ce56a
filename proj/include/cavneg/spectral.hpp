#pragma once

// Bath spectral densities J(omega). Frequencies are in units of the cavity
// frequency omega_c, with hbar = 1.

#include <string>
#include <variant>
#include <vector>

namespace cavneg {

struct Flat {
  double kappa = 1.0;
};

struct SingleLorentzian {
  double alpha_L = 0.0;
  double Gamma = 0.0;
  double omega_bc = 1.0;
};

struct DoubleLorentzian {
  double alpha_L1 = 0.0;
  double alpha_L2 = 0.0;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double omega_bc = 1.0;
  double W_D1 = 0.5;
  double W_D2 = 0.5;
};

struct BandGapLorentzian {
  double alpha_L1 = 0.0;
  double alpha_L2 = 0.0;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double omega_bc = 1.0;
  double W_B1 = 2.0;
  double W_B2 = 1.0;
};

/// J(w) = alpha * omega_cut^(1-s) * w^s * exp(-w / omega_cut).
/// s = 1/2 sub-ohmic, s = 1 ohmic, s = 3 super-ohmic.
struct OhmicFamily {
  double s = 1.0;
  double alpha = 0.0;
  double omega_cut = 1.0;
};

using SpectralModel =
    std::variant<Flat, SingleLorentzian, DoubleLorentzian, BandGapLorentzian, OhmicFamily>;

struct Violation {
  std::string field;
  std::string constraint;
};

/// Every violated parameter constraint of `model`; empty when valid.
/// Band-gap positivity is additionally checked on a 10^4-point grid.
std::vector<Violation> validate(const SpectralModel& model);

/// Throws ParameterError listing all violations, if any.
void require_valid(const SpectralModel& model);

/// Evaluates J(omega). Throws ParameterError for invalid models or omega < 0.
double evaluate(const SpectralModel& model, double omega);

/// Lorentzian lineshape as written for the single-Lorentzian density:
/// (alpha_L / 2pi) * Gamma^2 / ((w - w_bc)^2 + (Gamma/2)^2).
double lorentzian_term(double alpha_L, double Gamma, double omega_bc, double omega);

/// Short tag used in configuration files and logs ("single_lorentzian", ...).
std::string model_tag(const SpectralModel& model);

bool is_lorentzian(const SpectralModel& model);

}  // namespace cavneg
