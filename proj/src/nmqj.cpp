#include "cavneg/nmqj.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

constexpr double kStepWarning = 0.1;
constexpr double kNormFloor = 1e-12;

void check_channel(int channel) {
  if (channel < 1 || channel > kCavities) throw ContractViolation("jump channel must be 1, 2 or 3");
}

double occupation_expectation(const PureState& psi, int channel) {
  // <a+ a> on a normalized state: the weight of basis vectors with the cavity filled.
  double s = 0.0;
  for (std::size_t k = 0; k < kDim; ++k)
    if (occupation(k)[channel - 1] == 1) s += std::norm(psi[k]);
  return s / norm_squared(psi);
}

bool is_single_jump_descendant(const Trajectory& source, const Trajectory& target, int channel) {
  if (source.history.size() != target.history.size() + 1) return false;
  if (source.history.back().channel != channel) return false;
  for (std::size_t k = 0; k < target.history.size(); ++k)
    if (source.history[k].channel != target.history[k].channel) return false;
  return true;
}

PureState apply_lowering(const std::vector<int>& channels, PureState psi) {
  for (int c : channels) psi = apply_operator(annihilation(c), psi);
  return psi;
}

double projector_distance(const PureState& a, const PureState& b) {
  return max_abs_diff(projector(a), projector(b));
}

// Per-trajectory stream: identical draws regardless of how trajectories are
// split across workers.
std::mt19937_64 trajectory_stream(std::uint64_t seed, long index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(
                                                           static_cast<std::uint64_t>(index) >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Group {
  std::vector<int> channels;
  int parent = -1;
  int last_channel = 0;
  std::array<int, kCavities> children{-1, -1, -1};
  PureState state{};
};

std::vector<Group> enumerate_groups(const PureState& root) {
  std::vector<Group> groups;
  groups.push_back({{}, -1, 0, {-1, -1, -1}, normalized(root)});
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int c = 1; c <= kCavities; ++c) {
      std::vector<int> seq = groups[g].channels;
      seq.push_back(c);
      const PureState lowered = apply_lowering(seq, root);
      if (norm_squared(lowered) < kNormFloor) continue;
      Group child{seq, static_cast<int>(g), c, {-1, -1, -1}, normalized(lowered)};
      groups[g].children[c - 1] = static_cast<int>(groups.size());
      groups.push_back(std::move(child));
    }
  }
  return groups;
}

}  // namespace

PureState nonhermitian_step(const PureState& psi, const RateCoefficients& rates, double t, double dt) {
  // H is diagonal: the total excitation number times h(t) = Im beta - i kappa/2.
  auto deriv = [&rates](double tau, const PureState& v) {
    const Complex beta = rates.beta(tau);
    const Complex h{beta.imag(), -beta.real()};
    PureState out{};
    for (std::size_t k = 0; k < kDim; ++k) {
      const Occupation n = occupation(k);
      const double total = n[0] + n[1] + n[2];
      out[k] = Complex{0.0, -1.0} * h * total * v[k];
    }
    return out;
  };
  auto axpy = [](const PureState& x, Complex s, const PureState& y) {
    PureState out{};
    for (std::size_t k = 0; k < kDim; ++k) out[k] = x[k] + s * y[k];
    return out;
  };
  const PureState k1 = deriv(t, psi);
  const PureState k2 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k1));
  const PureState k3 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k2));
  const PureState k4 = deriv(t + dt, axpy(psi, dt, k3));
  PureState out{};
  for (std::size_t k = 0; k < kDim; ++k)
    out[k] = psi[k] + (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  if (norm_squared(out) < kNormFloor * kNormFloor)
    throw NumericalError("trajectory norm collapsed in the non-Hermitian step");
  return out;
}

double positive_jump_probability(const PureState& psi, int channel, double kappa, double dt) {
  check_channel(channel);
  if (kappa < 0.0) throw ContractViolation("positive jump requested while the decay rate is negative");
  return kappa * occupation_expectation(psi, channel) * dt;
}

Trajectory apply_positive_jump(const Trajectory& traj, int channel, double t) {
  check_channel(channel);
  if (!traj.history.empty() && !(t > traj.history.back().time))
    throw ContractViolation("jump times must be strictly increasing");
  const PureState lowered = apply_operator(annihilation(channel), traj.state);
  if (norm_squared(lowered) < kNormFloor * kNormFloor)
    throw ContractViolation("channel annihilates the trajectory state");
  Trajectory out = traj;
  out.state = normalized(lowered);
  out.history.push_back({t, channel});
  return out;
}

double negative_jump_probability(const Trajectory& source, const Trajectory& target, int channel,
                                 double kappa, double dt, long n_source, long n_target) {
  check_channel(channel);
  if (kappa > 0.0) throw ContractViolation("negative jump requested while the decay rate is positive");
  if (!is_single_jump_descendant(source, target, channel))
    throw ContractViolation("source group is not a single-jump descendant of the target");
  if (n_target <= 0 || n_source <= 0) return 0.0;
  return (static_cast<double>(n_target) / static_cast<double>(n_source)) * std::abs(kappa) *
         occupation_expectation(target.state, channel) * dt;
}

Trajectory apply_negative_jump(const Trajectory& member, const Trajectory& ancestor) {
  if (member.history.empty()) throw ContractViolation("trajectory without jumps has no ancestor");
  if (!is_single_jump_descendant(member, ancestor, member.history.back().channel))
    throw ContractViolation("ancestor history does not match the member");
  Trajectory out = member;
  out.state = normalized(ancestor.state);
  out.history.pop_back();
  return out;
}

NmqjConfig nmqj_config_from(const EvolutionConfig& evolution, long n_traj, std::uint64_t seed, int jobs) {
  if (evolution.xi12 != 0.0 || evolution.xi23 != 0.0)
    throw ParameterError("the jump unraveling does not support photon hopping");
  const DensityMatrix& rho = evolution.initial;
  std::size_t pivot = 0;
  for (std::size_t k = 1; k < kDim; ++k)
    if (rho(k, k).real() > rho(pivot, pivot).real()) pivot = k;
  const double w = rho(pivot, pivot).real();
  if (!(w > 0.0)) throw ParameterError("initial state has no weight");
  PureState psi{};
  for (std::size_t k = 0; k < kDim; ++k) psi[k] = rho(k, pivot) / std::sqrt(w);
  if (max_abs_diff(projector(psi), rho) > 1e-10)
    throw ParameterError("the jump unraveling needs a pure initial state");
  NmqjConfig cfg;
  cfg.initial = psi;
  cfg.rates = evolution.rates;
  cfg.t_end = evolution.t_end;
  cfg.dt = evolution.dt;
  cfg.sample_every = evolution.sample_every;
  cfg.n_traj = n_traj;
  cfg.seed = seed;
  cfg.jobs = jobs;
  return cfg;
}

NmqjResult run_ensemble(const NmqjConfig& config) {
  if (config.n_traj < 1) throw ParameterError("n_traj must be >= 1");
  if (config.jobs < 1) throw ParameterError("jobs must be >= 1");
  if (!(config.dt > 0.0) || !(config.t_end >= config.dt)) throw ParameterError("invalid time grid");
  if (config.sample_every < 1) throw ParameterError("sample_every must be >= 1");
  if (!config.rates) throw ParameterError("rate coefficients are not set");

  std::vector<Group> groups = enumerate_groups(config.initial);
  const std::size_t n_groups = groups.size();
  const long steps = static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9));
  const double dt = config.dt;
  const auto n_traj = static_cast<std::size_t>(config.n_traj);
  const int jobs = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.jobs), n_traj));

  std::vector<int> member_group(n_traj, 0);
  std::vector<std::mt19937_64> streams;
  streams.reserve(n_traj);
  for (std::size_t i = 0; i < n_traj; ++i) streams.push_back(trajectory_stream(config.seed, static_cast<long>(i)));

  std::vector<long> counts(n_groups, 0);
  counts[0] = config.n_traj;

  // Start-of-step snapshot shared read-only by the workers.
  double kappa = 0.0;
  std::vector<std::array<double, kCavities>> p_positive(n_groups);
  std::vector<double> p_negative(n_groups, 0.0);

  struct Tally {
    std::vector<long> delta;
    long positive = 0;
    long negative = 0;
    long violations = 0;
  };
  std::vector<Tally> tallies(static_cast<std::size_t>(jobs));
  for (auto& t : tallies) t.delta.assign(n_groups, 0);

  NmqjResult result;
  long step = 0;
  long pos_since = 0, neg_since = 0;

  auto average = [&] {
    DensityMatrix rho;
    for (std::size_t g = 0; g < n_groups; ++g)
      if (counts[g] > 0) rho += Complex(static_cast<double>(counts[g])) * projector(groups[g].state);
    return rho * (1.0 / static_cast<double>(config.n_traj));
  };

  auto check_ancestors = [&] {
    const PureState root_now = groups[0].state;
    for (std::size_t g = 1; g < n_groups; ++g) {
      const PureState ref = normalized(apply_lowering(groups[g].channels, root_now));
      result.max_ancestor_error = std::max(result.max_ancestor_error, projector_distance(ref, groups[g].state));
    }
  };

  auto prepare = [&](double t) {
    const Coefficients c = config.rates(t);
    if (c.alpha != Complex{}) throw ParameterError("the jump unraveling requires zero temperature");
    kappa = c.kappa();
    bool warn = false;
    for (std::size_t g = 0; g < n_groups; ++g) {
      p_positive[g] = {0.0, 0.0, 0.0};
      p_negative[g] = 0.0;
      if (kappa > 0.0) {
        double total = 0.0;
        for (int ch = 1; ch <= kCavities; ++ch) {
          if (groups[g].children[ch - 1] < 0) continue;
          p_positive[g][ch - 1] = positive_jump_probability(groups[g].state, ch, kappa, dt);
          total += p_positive[g][ch - 1];
        }
        warn = warn || total > kStepWarning;
      } else if (kappa < 0.0 && groups[g].parent >= 0 && counts[g] > 0) {
        const Group& parent = groups[static_cast<std::size_t>(groups[g].parent)];
        const long n_parent = counts[static_cast<std::size_t>(groups[g].parent)];
        if (n_parent > 0)
          p_negative[g] = (static_cast<double>(n_parent) / static_cast<double>(counts[g])) * std::abs(kappa) *
                          occupation_expectation(parent.state, groups[g].last_channel) * dt;
        warn = warn || p_negative[g] > kStepWarning;
      }
    }
    if (warn) ++result.step_warnings;
  };

  auto emit = [&](double t) {
    NmqjSample s;
    s.t = t;
    s.rho = average();
    s.kappa = config.rates.kappa(t);
    s.positive_jumps = pos_since;
    s.negative_jumps = neg_since;
    pos_since = neg_since = 0;
    result.samples.push_back(std::move(s));
    check_ancestors();
  };

  emit(0.0);
  if (steps > 0) prepare(0.0);

  // Runs on one thread once every worker has finished its draws for a step.
  // The barrier requires noexcept, so failures stop all workers and are
  // rethrown after the join.
  std::exception_ptr completion_error;
  bool stop = false;
  auto advance = [&] {
    const double t = static_cast<double>(step) * dt;
    for (auto& tally : tallies) {
      for (std::size_t g = 0; g < n_groups; ++g) {
        counts[g] += tally.delta[g];
        tally.delta[g] = 0;
      }
      pos_since += tally.positive;
      neg_since += tally.negative;
      result.sign_violations += tally.violations;
      tally.positive = tally.negative = tally.violations = 0;
    }
    long total = 0;
    for (long c : counts) total += c;
    result.max_count_error = std::max(result.max_count_error, std::abs(total - config.n_traj));
    for (auto& g : groups) g.state = normalized(nonhermitian_step(g.state, config.rates, t, dt));
    ++step;
    const double t_next = static_cast<double>(step) * dt;
    if (step % config.sample_every == 0 || step == steps) emit(t_next);
    if (step < steps) prepare(t_next);
  };
  auto reconcile = [&]() noexcept {
    try {
      advance();
    } catch (...) {
      completion_error = std::current_exception();
      stop = true;
    }
  };

  std::barrier sync(jobs, reconcile);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));

  auto worker = [&](int w) {
    const std::size_t begin = n_traj * static_cast<std::size_t>(w) / static_cast<std::size_t>(jobs);
    const std::size_t end = n_traj * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(jobs);
    Tally& tally = tallies[static_cast<std::size_t>(w)];
    for (long s = 0; s < steps; ++s) {
      for (std::size_t i = begin; i < end; ++i) {
        const double u = uniform01(streams[i]);
        const int g = member_group[i];
        const Group& grp = groups[static_cast<std::size_t>(g)];
        int target = g;
        bool positive = false;
        if (kappa > 0.0) {
          double cum = 0.0;
          for (int ch = 0; ch < kCavities; ++ch) {
            cum += p_positive[static_cast<std::size_t>(g)][ch];
            if (u < cum) {
              target = grp.children[ch];
              positive = true;
              ++tally.positive;
              break;
            }
          }
        } else if (kappa < 0.0 && u < p_negative[static_cast<std::size_t>(g)]) {
          target = grp.parent;
          ++tally.negative;
        }
        if (target != g) {
          if (positive ? !(kappa > 0.0) : !(kappa < 0.0)) ++tally.violations;
          --tally.delta[static_cast<std::size_t>(g)];
          ++tally.delta[static_cast<std::size_t>(target)];
          member_group[i] = target;
        }
      }
      sync.arrive_and_wait();
      if (stop) return;
    }
  };

  auto guarded = [&](int w) {
    try {
      worker(w);
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  if (jobs == 1) {
    guarded(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(guarded, w);
    for (auto& th : pool) th.join();
  }
  if (completion_error) std::rethrow_exception(completion_error);
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t g = 0; g < n_groups; ++g)
    result.groups.push_back({groups[g].channels, counts[g], groups[g].state});
  return result;
}

}  // namespace cavneg
