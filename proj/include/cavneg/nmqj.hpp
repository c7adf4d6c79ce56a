#pragma once

// Non-Markovian quantum jump unraveling at zero temperature. Trajectories that
// share a jump-channel sequence share a pure state, so the ensemble is stored
// as groups keyed by that sequence plus a per-trajectory group index.

#include <cstdint>
#include <vector>

#include "cavneg/dynamics.hpp"
#include "cavneg/hilbert.hpp"
#include "cavneg/rates.hpp"

namespace cavneg {

struct JumpRecord {
  double time = 0.0;
  int channel = 0;  // cavity 1..3
};

struct Trajectory {
  PureState state{};
  std::vector<JumpRecord> history;
  bool alive = true;
};

/// One RK4 step of d psi/dt = -i H psi with
/// H = sum_j (Im beta(t) - i kappa(t)/2) a_j+ a_j. Result is unnormalized.
/// Throws NumericalError if the norm falls below 1e-12.
PureState nonhermitian_step(const PureState& psi, const RateCoefficients& rates, double t, double dt);

/// kappa <n_j> dt. Throws ContractViolation for kappa < 0.
double positive_jump_probability(const PureState& psi, int channel, double kappa, double dt);

/// a_j psi / |a_j psi| with (t, j) appended. Throws ContractViolation if the
/// channel annihilates the state or t does not follow the last jump.
Trajectory apply_positive_jump(const Trajectory& traj, int channel, double t);

/// (n_target / n_source) |kappa| <target| a_j+ a_j |target> dt for a member of
/// `source` returning to its ancestor `target`. Zero when the target is empty.
/// Throws ContractViolation for kappa > 0 or when `source` is not `target`
/// plus one jump through `channel`.
double negative_jump_probability(const Trajectory& source, const Trajectory& target, int channel,
                                 double kappa, double dt, long n_source, long n_target);

/// Member adopts the ancestor's state and drops its last jump.
/// Throws ContractViolation on an empty history or a mismatched ancestor.
Trajectory apply_negative_jump(const Trajectory& member, const Trajectory& ancestor);

struct NmqjConfig {
  PureState initial = initial_pure_state(InitialKind::W);
  RateCoefficients rates = RateCoefficients::markovian(1.0, 0.0);
  double t_end = 10.0;
  double dt = 1e-3;
  int sample_every = 10;
  long n_traj = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Builds an ensemble configuration from an evolution configuration. Throws
/// ParameterError when hopping is set or the initial state is not pure.
NmqjConfig nmqj_config_from(const EvolutionConfig& evolution, long n_traj, std::uint64_t seed, int jobs);

struct NmqjSample {
  double t = 0.0;
  DensityMatrix rho;
  double kappa = 0.0;
  long positive_jumps = 0;  // since the previous sample
  long negative_jumps = 0;
};

struct GroupSummary {
  std::vector<int> channels;
  long count = 0;
  PureState state{};
};

struct NmqjResult {
  std::vector<NmqjSample> samples;
  std::vector<GroupSummary> groups;  // at t_end
  /// Jumps taken with the wrong sign of kappa. Zero by construction.
  long sign_violations = 0;
  /// Steps where some group's jump probability exceeded 0.1.
  long step_warnings = 0;
  /// Largest projector difference between a group state and the ancestor
  /// chain re-propagated from the root.
  double max_ancestor_error = 0.0;
  /// Largest deviation of the summed counts from n_traj (zero by construction).
  long max_count_error = 0;
};

/// Bitwise reproducible for fixed (seed, n_traj, dt), independent of `jobs`.
/// Throws ParameterError if alpha(t) is nonzero (finite temperature).
NmqjResult run_ensemble(const NmqjConfig& config);

}  // namespace cavneg
