#include "cavneg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

#include "cavneg/errors.hpp"
#include "cavneg/presets.hpp"

namespace cavneg {

namespace {

constexpr double kQuadratureTableStep = 0.01;

std::string state_suffix(const ScenarioConfig& c) { return c.name + "-" + to_string(c.initial); }

void report(std::ostream& out, const ScenarioResult& r) {
  out << state_suffix(r.config) << ": death_time = ";
  if (r.series.death_time) out << format_number(*r.series.death_time);
  else out << "none before t = " << format_number(r.config.grid.t_end);
  out << " (threshold " << format_number(r.config.outputs.threshold) << ")";
  out << ", average kappa over [0, " << format_number(r.config.grid.t_end)
      << "] = " << format_number(r.average_kappa) << '\n';
  if (r.series.max_negative_eigenvalues > 1)
    out << "  note: partial transpose had " << r.series.max_negative_eigenvalues
        << " negative eigenvalues at some sample\n";
}

std::vector<Sample> as_samples(const NmqjResult& r) {
  std::vector<Sample> out;
  out.reserve(r.samples.size());
  for (const auto& s : r.samples) out.push_back({s.t, s.rho});
  return out;
}

}  // namespace

ScenarioConfig apply_overrides(ScenarioConfig config, const RunOptions& options) {
  if (options.threshold) config.outputs.threshold = *options.threshold;
  if (options.seed) config.solver.seed = *options.seed;
  if (options.state) config.initial = *options.state;
  validate(config);
  return config;
}

RateCoefficients build_rates(const ScenarioConfig& config) {
  require_valid(config.bath);
  if (config.solver.kind == SolverKind::Lindblad) {
    const auto& flat = std::get<Flat>(config.bath.model);
    return RateCoefficients::markovian(flat.kappa, config.bath.nbar);
  }
  if (config.rates == RateSource::Analytic) return analytic_rates(config.bath);
  const RateTable table(quadrature_rates(config.bath), config.grid.t_end + kQuadratureTableStep,
                        kQuadratureTableStep);
  return table.as_rates();
}

EvolutionConfig build_evolution(const ScenarioConfig& config, const RateCoefficients& rates) {
  EvolutionConfig e;
  e.initial = initial_state(config.initial);
  e.rates = rates;
  e.xi12 = config.xi12;
  e.xi23 = config.xi23;
  e.t_end = config.grid.t_end;
  e.dt = config.grid.dt;
  e.sample_every = config.grid.sample_every;
  e.negativity_threshold = config.outputs.threshold;
  return e;
}

ScenarioResult simulate(const ScenarioConfig& config, int jobs) {
  validate(config);
  const RateCoefficients rates = build_rates(config);
  const EvolutionConfig evolution = build_evolution(config, rates);
  ScenarioResult r;
  r.config = config;
  switch (config.solver.kind) {
    case SolverKind::Eme:
      r.series = negativity_series(evolution);
      break;
    case SolverKind::Lindblad: {
      const auto& flat = std::get<Flat>(config.bath.model);
      const auto samples =
          integrate(evolution, lindblad_rhs(flat.kappa, config.bath.nbar, config.xi12, config.xi23));
      r.series = negativity_series(samples, rates, evolution.negativity_threshold);
      break;
    }
    case SolverKind::Nmqj: {
      const NmqjResult ens = run_ensemble(nmqj_config_from(evolution, config.solver.n_traj, config.solver.seed, jobs));
      r.series = negativity_series(as_samples(ens), rates, evolution.negativity_threshold);
      break;
    }
  }
  r.average_kappa = average_rate([&rates](double t) { return rates.kappa(t); }, 0.0, config.grid.t_end);
  return r;
}

CsvTable dynamics_table(const NegativitySeries& s) {
  CsvTable t;
  t.header = {"t", "negativity", "kappa"};
  for (std::size_t k = 0; k < kDim; ++k) t.header.push_back(element_name(k, k));
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    std::vector<double> row{s.times[i], s.negativity[i], s.kappa[i]};
    row.insert(row.end(), s.populations[i].begin(), s.populations[i].end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable rates_table(const ScenarioConfig& config, const RateCoefficients& rates) {
  CsvTable t;
  t.header = {"t", "kappa", "re_alpha", "im_alpha", "re_beta", "im_beta"};
  const double h = config.grid.dt * config.grid.sample_every;
  const long n = static_cast<long>(std::ceil(config.grid.t_end / h - 1e-9));
  for (long k = 0; k <= n; ++k) {
    const double time = std::min(static_cast<double>(k) * h, config.grid.t_end);
    const Coefficients c = rates(time);
    t.rows.push_back({time, c.kappa(), c.alpha.real(), c.alpha.imag(), c.beta.real(), c.beta.imag()});
  }
  return t;
}

ComparisonResult compare_nmqj(const ScenarioConfig& config, int jobs) {
  ScenarioConfig c = config;
  c.solver.kind = SolverKind::Nmqj;
  validate(c);
  const RateCoefficients rates = build_rates(c);
  const EvolutionConfig evolution = build_evolution(c, rates);
  const auto eme = integrate(evolution);
  const NmqjResult ens = run_ensemble(nmqj_config_from(evolution, c.solver.n_traj, c.solver.seed, jobs));
  if (eme.size() != ens.samples.size()) throw NumericalError("solver sample grids differ");

  ComparisonResult r;
  r.table.header = {"t", "trace_distance_to_eme", "negativity_nmqj", "negativity_eme", "n_negative_jumps",
                    "n_positive_jumps"};
  for (std::size_t i = 0; i < eme.size(); ++i) {
    const double d = trace_distance(ens.samples[i].rho, eme[i].rho);
    r.max_trace_distance = std::max(r.max_trace_distance, d);
    r.table.rows.push_back({eme[i].t, d, negativity(ens.samples[i].rho), negativity(eme[i].rho),
                            static_cast<double>(ens.samples[i].negative_jumps),
                            static_cast<double>(ens.samples[i].positive_jumps)});
  }
  r.sign_violations = ens.sign_violations;
  r.step_warnings = ens.step_warnings;
  r.max_ancestor_error = ens.max_ancestor_error;
  return r;
}

int run_simulate(const ScenarioConfig& config, const RunOptions& options, std::ostream& out) {
  const ScenarioConfig c = apply_overrides(config, options);
  const ScenarioResult r = simulate(c, options.jobs);
  const auto csv = resolve_output(c.outputs.csv_path, state_suffix(c) + ".csv");
  write_file_atomic(csv, to_csv(dynamics_table(r.series)));
  if (!c.outputs.svg_path.empty()) {
    const auto svg = resolve_output(c.outputs.svg_path, "");
    write_file_atomic(svg, to_svg(state_suffix(c), "t", "negativity",
                                  {{c.name, r.series.times, r.series.negativity}}));
  }
  report(out, r);
  out << "wrote " << csv.string() << '\n';
  return kExitOk;
}

int run_rates(const ScenarioConfig& config, std::ostream& out) {
  validate(config);
  const RateCoefficients rates = build_rates(config);
  const CsvTable t = rates_table(config, rates);
  double kmax = -INFINITY, kmin = INFINITY;
  for (const auto& row : t.rows) {
    kmax = std::max(kmax, row[1]);
    kmin = std::min(kmin, row[1]);
  }
  const auto csv = resolve_output(config.outputs.csv_path, config.name + "-rates.csv");
  write_file_atomic(csv, to_csv(t));
  out << config.name << ": kappa in [" << format_number(kmin) << ", " << format_number(kmax)
      << "], average over [0, " << format_number(config.grid.t_end)
      << "] = " << format_number(average_rate([&rates](double s) { return rates.kappa(s); }, 0.0, config.grid.t_end))
      << '\n';
  out << "wrote " << csv.string() << '\n';
  return kExitOk;
}

int run_figure(const std::string& preset, const RunOptions& options, std::ostream& out) {
  const FigurePreset p = figure_preset(preset, options.state);
  std::vector<ScenarioConfig> curves;
  for (const auto& c : p.curves) curves.push_back(apply_overrides(c, {options.jobs, options.threshold, options.seed, {}}));

  std::vector<ScenarioResult> results(curves.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, options.jobs));
  for (std::size_t begin = 0; begin < curves.size(); begin += width) {
    std::vector<std::future<ScenarioResult>> batch;
    const std::size_t end = std::min(curves.size(), begin + width);
    for (std::size_t k = begin; k < end; ++k)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred,
                                 [&curves, k] { return simulate(curves[k]); }));
    for (std::size_t k = begin; k < end; ++k) results[k] = batch[k - begin].get();
  }

  const std::string state = to_string(curves.front().initial);
  std::vector<PlotSeries> negativity_plot, kappa_plot;
  for (const auto& r : results) {
    const auto csv = resolve_output("", state_suffix(r.config) + ".csv");
    write_file_atomic(csv, to_csv(dynamics_table(r.series)));
    report(out, r);
    out << "  wrote " << csv.string() << '\n';
    negativity_plot.push_back({r.config.name, r.series.times, r.series.negativity});
    kappa_plot.push_back({r.config.name, r.series.times, r.series.kappa});
  }
  const auto svg = resolve_output("", preset + "-" + state + ".svg");
  write_file_atomic(svg, to_svg(preset + " (" + state + ")", "t", "negativity", negativity_plot));
  const auto svg_k = resolve_output("", preset + "-" + state + "-kappa.svg");
  write_file_atomic(svg_k, to_svg(preset + " decay rate", "t", "kappa(t)", kappa_plot));
  out << "wrote " << svg.string() << " and " << svg_k.string() << '\n';
  return kExitOk;
}

int run_compare(const ScenarioConfig& config, const RunOptions& options, std::ostream& out) {
  const ScenarioConfig c = apply_overrides(config, options);
  const ComparisonResult r = compare_nmqj(c, options.jobs);
  const auto csv = resolve_output(c.outputs.csv_path, state_suffix(c) + "-nmqj.csv");
  write_file_atomic(csv, to_csv(r.table));
  out << state_suffix(c) << ": max trace distance to EME = " << format_number(r.max_trace_distance)
      << " (n_traj " << c.solver.n_traj << ", bound 3/sqrt(n) = "
      << format_number(3.0 / std::sqrt(static_cast<double>(c.solver.n_traj))) << ")\n";
  out << "  jumps against the sign of kappa: " << r.sign_violations << '\n';
  if (r.step_warnings > 0)
    out << "  warning: " << r.step_warnings << " steps had a jump probability above 0.1; reduce dt\n";
  out << "wrote " << csv.string() << '\n';
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ContractViolation& e) {
    err << "internal contract violation: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cavneg
