#include "cavneg/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr double kHermiticityLimit = 1e-8;

// Per-cavity index tables for the hard-core ladder: raised[i][k] is the basis
// index with cavity i filled, or -1 if already occupied; lowered likewise.
struct LadderTables {
  std::array<std::array<int, kDim>, kCavities> raised{};
  std::array<std::array<int, kDim>, kCavities> lowered{};
  std::array<std::array<int, kDim>, kCavities> occ{};
};

const LadderTables& ladder() {
  static const LadderTables tables = [] {
    LadderTables t;
    for (int i = 0; i < kCavities; ++i)
      for (std::size_t k = 0; k < kDim; ++k) {
        Occupation n = occupation(k);
        t.occ[i][k] = n[i];
        Occupation up = n, down = n;
        up[i] = 1;
        down[i] = 0;
        t.raised[i][k] = n[i] == 0 ? static_cast<int>(basis_index(up)) : -1;
        t.lowered[i][k] = n[i] == 1 ? static_cast<int>(basis_index(down)) : -1;
      }
    return t;
  }();
  return tables;
}

Operator hopping_hamiltonian(double xi12, double xi23) {
  const auto& a1 = annihilation(1);
  const auto& a2 = annihilation(2);
  const auto& a3 = annihilation(3);
  Operator h = Complex(xi12) * (a1.adjoint() * a2 + a2.adjoint() * a1);
  h += Complex(xi23) * (a2.adjoint() * a3 + a3.adjoint() * a2);
  return h;
}

void add_commutator(DensityMatrix& out, const Operator& h, const DensityMatrix& rho) {
  const Complex minus_i{0.0, -1.0};
  out += minus_i * (h * rho - rho * h);
}

}  // namespace

DensityMatrix rhs_superoperator(const DensityMatrix& rho, Complex alpha, Complex beta, double xi12,
                                double xi23) {
  const auto& t = ladder();
  const double two_re_alpha = 2.0 * alpha.real();
  const double two_re_beta = 2.0 * beta.real();
  DensityMatrix out;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) {
      Complex d{};
      for (int i = 0; i < kCavities; ++i) {
        const int nr = t.occ[i][r];
        const int nc = t.occ[i][c];
        if (nr && nc) d += two_re_alpha * rho(t.lowered[i][r], t.lowered[i][c]);
        if (!nr && !nc) d += two_re_beta * rho(t.raised[i][r], t.raised[i][c]);
        const Complex diag = alpha * double(1 - nc) + std::conj(alpha) * double(1 - nr) +
                             beta * double(nr) + std::conj(beta) * double(nc);
        d -= diag * rho(r, c);
      }
      out(r, c) = d;
    }
  if (xi12 != 0.0 || xi23 != 0.0) add_commutator(out, hopping_hamiltonian(xi12, xi23), rho);
  return out;
}

DensityMatrix lindblad_markovian_rhs(const DensityMatrix& rho, double kappa, double nbar, double xi12,
                                     double xi23) {
  auto dissipator = [&rho](const Operator& l) {
    const Operator ld = l.adjoint();
    const Operator ldl = ld * l;
    return l * rho * ld - Complex(0.5) * (ldl * rho + rho * ldl);
  };
  DensityMatrix out;
  for (int i = 1; i <= kCavities; ++i) {
    const auto& a = annihilation(i);
    out += Complex(kappa * (nbar + 1.0)) * dissipator(a);
    if (nbar != 0.0) out += Complex(kappa * nbar) * dissipator(a.adjoint());
  }
  if (xi12 != 0.0 || xi23 != 0.0) add_commutator(out, hopping_hamiltonian(xi12, xi23), rho);
  return out;
}

void require_valid(const EvolutionConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ParameterError("dt must be positive");
  if (!(config.t_end >= config.dt)) throw ParameterError("t_end must be at least dt");
  if (config.sample_every < 1) throw ParameterError("sample_every must be >= 1");
  if (!std::isfinite(config.xi12) || !std::isfinite(config.xi23))
    throw ParameterError("hopping strengths must be finite");
  if (!config.rates) throw ParameterError("rate coefficients are not set");
  if (!(config.negativity_threshold >= 0.0)) throw ParameterError("negativity threshold must be >= 0");
}

long step_count(const EvolutionConfig& config) {
  return static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9));
}

RhsFn eme_rhs(const EvolutionConfig& config) {
  return [rates = config.rates, xi12 = config.xi12, xi23 = config.xi23](double t,
                                                                          const DensityMatrix& rho) {
    const Coefficients c = rates(t);
    return rhs_superoperator(rho, c.alpha, c.beta, xi12, xi23);
  };
}

RhsFn lindblad_rhs(double kappa, double nbar, double xi12, double xi23) {
  return [=](double, const DensityMatrix& rho) {
    return lindblad_markovian_rhs(rho, kappa, nbar, xi12, xi23);
  };
}

std::vector<Sample> integrate(const EvolutionConfig& config, const RhsFn& rhs) {
  require_valid(config);
  const long steps = step_count(config);
  const double h = config.dt;
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(steps / config.sample_every + 2));

  auto emit = [&out](double t, const DensityMatrix& rho) {
    const Complex tr = rho.trace();
    const double drift = std::abs(tr - 1.0);
    const double herm = rho.hermiticity_error();
    if (!(drift <= kTraceDriftLimit) || !(herm <= kHermiticityLimit)) {
      std::ostringstream msg;
      msg << "integration unstable at t = " << t << " (trace drift " << drift << ", hermiticity error "
          << herm << "); reduce dt";
      throw NumericalError(msg.str());
    }
    out.push_back({t, rho * (1.0 / tr.real())});
  };

  DensityMatrix rho = config.initial;
  emit(0.0, rho);
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const DensityMatrix k1 = rhs(t, rho);
    const DensityMatrix k2 = rhs(t + 0.5 * h, rho + Complex(0.5 * h) * k1);
    const DensityMatrix k3 = rhs(t + 0.5 * h, rho + Complex(0.5 * h) * k2);
    const DensityMatrix k4 = rhs(t + h, rho + Complex(h) * k3);
    rho += Complex(h / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);
    if ((k + 1) % config.sample_every == 0 || k + 1 == steps)
      emit(static_cast<double>(k + 1) * h, rho);
  }
  return out;
}

std::vector<Sample> integrate(const EvolutionConfig& config) { return integrate(config, eme_rhs(config)); }

NegativitySeries negativity_series(const std::vector<Sample>& samples, const RateCoefficients& rates,
                                   double threshold) {
  NegativitySeries s;
  s.times.reserve(samples.size());
  for (const auto& sample : samples) {
    const auto detail = negativity_detail(sample.rho);
    s.times.push_back(sample.t);
    s.negativity.push_back(detail.negativity);
    s.kappa.push_back(rates ? rates.kappa(sample.t) : 0.0);
    std::array<double, kDim> pop{};
    for (std::size_t k = 0; k < kDim; ++k) pop[k] = sample.rho(k, k).real();
    s.populations.push_back(pop);
    s.max_negative_eigenvalues = std::max(s.max_negative_eigenvalues, detail.negative_eigenvalues);
    if (!s.death_time && detail.negativity < threshold) s.death_time = sample.t;
  }
  return s;
}

NegativitySeries negativity_series(const EvolutionConfig& config) {
  return negativity_series(integrate(config), config.rates, config.negativity_threshold);
}

}  // namespace cavneg
