#include "cavneg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cavneg/detail/overloaded.hpp"
#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

using detail::overloaded;

constexpr int kPositivityGrid = 10000;
// Weight sums are exact identities; this only absorbs decimal round-off in configs.
constexpr double kWeightSlack = 1e-12;

void require_positive(std::vector<Violation>& out, const char* field, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    out.push_back({field, std::string(field) + " > 0"});
  }
}

void require_finite(std::vector<Violation>& out, const char* field, double value) {
  if (!std::isfinite(value)) out.push_back({field, std::string(field) + " finite"});
}

double bandgap_value(const BandGapLorentzian& m, double omega) {
  return m.W_B1 * lorentzian_term(m.alpha_L1, m.Gamma1, m.omega_bc, omega) -
         m.W_B2 * lorentzian_term(m.alpha_L2, m.Gamma2, m.omega_bc, omega);
}

}  // namespace

double lorentzian_term(double alpha_L, double Gamma, double omega_bc, double omega) {
  const double d = omega - omega_bc;
  return alpha_L / (2.0 * std::numbers::pi) * Gamma * Gamma / (d * d + 0.25 * Gamma * Gamma);
}

std::vector<Violation> validate(const SpectralModel& model) {
  std::vector<Violation> out;
  std::visit(
      overloaded{
          [&](const Flat& m) { require_positive(out, "kappa", m.kappa); },
          [&](const SingleLorentzian& m) {
            require_positive(out, "alpha_L", m.alpha_L);
            require_positive(out, "Gamma", m.Gamma);
            require_finite(out, "omega_bc", m.omega_bc);
          },
          [&](const DoubleLorentzian& m) {
            require_positive(out, "alpha_L1", m.alpha_L1);
            require_positive(out, "alpha_L2", m.alpha_L2);
            require_positive(out, "Gamma1", m.Gamma1);
            require_positive(out, "Gamma2", m.Gamma2);
            require_positive(out, "W_D1", m.W_D1);
            require_positive(out, "W_D2", m.W_D2);
            require_finite(out, "omega_bc", m.omega_bc);
            if (std::abs(m.W_D1 + m.W_D2 - 1.0) > kWeightSlack) out.push_back({"W_D1", "W_D1 + W_D2 = 1"});
          },
          [&](const BandGapLorentzian& m) {
            require_positive(out, "alpha_L1", m.alpha_L1);
            require_positive(out, "alpha_L2", m.alpha_L2);
            require_positive(out, "Gamma1", m.Gamma1);
            require_positive(out, "Gamma2", m.Gamma2);
            require_positive(out, "W_B1", m.W_B1);
            require_positive(out, "W_B2", m.W_B2);
            require_finite(out, "omega_bc", m.omega_bc);
            if (std::abs(m.W_B1 - m.W_B2 - 1.0) > kWeightSlack) out.push_back({"W_B1", "W_B1 - W_B2 = 1"});
            if (!(m.Gamma2 < m.Gamma1)) out.push_back({"Gamma2", "Gamma2 < Gamma1"});
            if (!out.empty()) return;
            // Grid check of J >= 0 on [0, 5 * max(omega_bc, 1)] plus the peak itself.
            const double upper = 5.0 * std::max(std::abs(m.omega_bc), 1.0);
            bool negative = bandgap_value(m, std::max(m.omega_bc, 0.0)) < 0.0;
            for (int k = 0; k < kPositivityGrid && !negative; ++k) {
              const double w = upper * k / (kPositivityGrid - 1);
              negative = bandgap_value(m, w) < 0.0;
            }
            if (negative) out.push_back({"W_B2", "J(omega) >= 0 on the validation grid"});
          },
          [&](const OhmicFamily& m) {
            require_positive(out, "s", m.s);
            require_positive(out, "alpha", m.alpha);
            require_positive(out, "omega_cut", m.omega_cut);
          },
      },
      model);
  return out;
}

void require_valid(const SpectralModel& model) {
  const auto violations = validate(model);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid " << model_tag(model) << " model:";
  for (const auto& v : violations) msg << " [" << v.field << ": " << v.constraint << "]";
  throw ParameterError(msg.str());
}

double evaluate(const SpectralModel& model, double omega) {
  if (!(omega >= 0.0)) throw ParameterError("spectral density evaluated at negative frequency");
  require_valid(model);
  return std::visit(
      overloaded{
          [](const Flat& m) { return m.kappa / (2.0 * std::numbers::pi); },
          [&](const SingleLorentzian& m) {
            return lorentzian_term(m.alpha_L, m.Gamma, m.omega_bc, omega);
          },
          [&](const DoubleLorentzian& m) {
            return m.W_D1 * lorentzian_term(m.alpha_L1, m.Gamma1, m.omega_bc, omega) +
                   m.W_D2 * lorentzian_term(m.alpha_L2, m.Gamma2, m.omega_bc, omega);
          },
          [&](const BandGapLorentzian& m) { return bandgap_value(m, omega); },
          [&](const OhmicFamily& m) {
            return m.alpha * std::pow(m.omega_cut, 1.0 - m.s) * std::pow(omega, m.s) *
                   std::exp(-omega / m.omega_cut);
          },
      },
      model);
}

std::string model_tag(const SpectralModel& model) {
  return std::visit(overloaded{
                        [](const Flat&) { return std::string("flat"); },
                        [](const SingleLorentzian&) { return std::string("single_lorentzian"); },
                        [](const DoubleLorentzian&) { return std::string("double_lorentzian"); },
                        [](const BandGapLorentzian&) { return std::string("bandgap_lorentzian"); },
                        [](const OhmicFamily&) { return std::string("ohmic"); },
                    },
                    model);
}

bool is_lorentzian(const SpectralModel& model) {
  return std::holds_alternative<SingleLorentzian>(model) ||
         std::holds_alternative<DoubleLorentzian>(model) ||
         std::holds_alternative<BandGapLorentzian>(model);
}

}  // namespace cavneg
