#pragma once

// Exact master equation for three cavities in independent baths with optional
// nearest-neighbour photon hopping, integrated with fixed-step RK4.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cavneg/hilbert.hpp"
#include "cavneg/rates.hpp"

namespace cavneg {

/// d rho / dt from the operator form:
///   sum_i alpha (a+ rho a - rho a a+) + alpha* (a+ rho a - a a+ rho)
///       + beta (a rho a+ - a+ a rho) + beta* (a rho a+ - rho a+ a)
///   - i [xi12 (a1+ a2 + a2+ a1) + xi23 (a2+ a3 + a3+ a2), rho]
DensityMatrix rhs_superoperator(const DensityMatrix& rho, Complex alpha, Complex beta,
                                double xi12 = 0.0, double xi23 = 0.0);

/// The 64 element equations in hand-expanded form, as typeset. The dissipative
/// parts are complete; several hopping terms are missing or mis-signed.
DensityMatrix rhs_elementwise_printed(const DensityMatrix& rho, Complex alpha, Complex beta,
                                      double xi12 = 0.0, double xi23 = 0.0);

enum class Coupling { Xi12, Xi23 };

/// Additive term factor * i * xi * rho(src_row, src_col) missing from the
/// typeset equation for element (row, col). Indices are 1-based.
struct HoppingCorrection {
  int row;
  int col;
  int src_row;
  int src_col;
  Coupling coupling;
  double factor;
};

std::span<const HoppingCorrection> hopping_corrections();

/// Typeset equations plus `hopping_corrections()`.
DensityMatrix rhs_elementwise(const DensityMatrix& rho, Complex alpha, Complex beta,
                              double xi12 = 0.0, double xi23 = 0.0);

/// sum_i kappa (nbar + 1) D[a_i] rho + kappa nbar D[a_i+] rho - i [H_hop, rho],
/// D[L] rho = L rho L+ - (L+ L rho + rho L+ L) / 2, built from dense products.
DensityMatrix lindblad_markovian_rhs(const DensityMatrix& rho, double kappa, double nbar,
                                     double xi12 = 0.0, double xi23 = 0.0);

struct EvolutionConfig {
  DensityMatrix initial = initial_state(InitialKind::W);
  RateCoefficients rates = RateCoefficients::markovian(1.0, 0.0);
  double xi12 = 0.0;
  double xi23 = 0.0;
  double t_end = 10.0;
  double dt = 1e-3;
  int sample_every = 10;
  double negativity_threshold = 1e-2;
};

/// Throws ParameterError on dt <= 0, t_end < dt, sample_every < 1,
/// non-finite hopping or a missing rate function.
void require_valid(const EvolutionConfig& config);

/// Number of RK4 steps taken for the configuration.
long step_count(const EvolutionConfig& config);

struct Sample {
  double t = 0.0;
  DensityMatrix rho;
};

using RhsFn = std::function<DensityMatrix(double t, const DensityMatrix& rho)>;

RhsFn eme_rhs(const EvolutionConfig& config);
RhsFn lindblad_rhs(double kappa, double nbar, double xi12 = 0.0, double xi23 = 0.0);

/// Classical RK4 with fixed step. Emits t = 0 and every `sample_every`-th
/// step, plus the final step. Output states are renormalized in trace; a drift
/// above 1e-6 or a Hermiticity error above 1e-8 throws NumericalError.
std::vector<Sample> integrate(const EvolutionConfig& config, const RhsFn& rhs);
std::vector<Sample> integrate(const EvolutionConfig& config);

struct NegativitySeries {
  std::vector<double> times;
  std::vector<double> negativity;
  std::vector<double> kappa;
  std::vector<std::array<double, kDim>> populations;
  std::optional<double> death_time;
  /// Largest number of negative partial-transpose eigenvalues seen.
  int max_negative_eigenvalues = 0;
};

/// Maps samples through `negativity`; death_time is the first sampled time
/// with negativity below `threshold`.
NegativitySeries negativity_series(const std::vector<Sample>& samples, const RateCoefficients& rates,
                                   double threshold);
NegativitySeries negativity_series(const EvolutionConfig& config);

}  // namespace cavneg
