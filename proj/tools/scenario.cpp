#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "afc/analysis.hpp"
#include "afc/csv.hpp"
#include "afc/propagation.hpp"
#include "afc/response.hpp"
#include "afc/signals.hpp"
#include "afc/units.hpp"

namespace afc::cli {

namespace {

CombSpectrum build_comb(const Scenario& s, std::vector<std::string>& warnings) {
  const GridSpec grid{s.samples_per_period, 1};
  switch (s.family) {
    case CombFamily::Lorentzian: {
      const double hwhm = s.hwhm_optimal
                              ? optimal_width(s.alpha_max_per_m * s.length, s.period)
                              : angular(s.hwhm_hz);
      return build_lorentzian_comb(s.alpha_max_per_m, hwhm, s.period, s.length, s.gamma,
                                   s.alignment, grid);
    }
    case CombFamily::Square:
      return build_square_comb(s.alpha_max_per_m, s.burn_beta_hz, s.burn_mu, s.period,
                               s.length, s.gamma, s.alignment, grid);
    case CombFamily::Csv: {
      auto loaded = load_measured_spectrum(s.csv_path, s.period, s.length, s.gamma, s.alignment,
                                           s.csv_allow_single_period);
      if (loaded.clipped_count > 0) {
        std::ostringstream msg;
        msg << loaded.clipped_count << " negative absorption samples clipped to zero"
            << " (raw average " << loaded.raw_average_alpha << " 1/m)";
        warnings.push_back(msg.str());
      }
      return std::move(loaded.comb);
    }
  }
  throw std::logic_error("unreachable comb family");
}

TransferFunction build_transfer(const Scenario& s, const CombSpectrum& comb) {
  const std::size_t m = comb.samples_per_period();
  const std::size_t j0 = comb.period_start_index();
  std::vector<double> grid(comb.delta().begin() + j0, comb.delta().begin() + j0 + m);
  if (s.transfer == TransferKind::Sampled) return TransferFunction::sampled(comb, grid);
  auto series = fourier_coefficients(comb, s.fourier_order);
  std::optional<int> forced;
  if (s.force_fourier_order) forced = s.fourier_order;
  return TransferFunction::analytic(series, comb.gamma(), comb.length(), std::move(grid),
                                    forced);
}

TimeGrid make_grid(const Scenario& s) {
  TimeGrid g;
  g.dt = s.period / s.dt_divisor;
  g.n = static_cast<std::size_t>(s.window_periods) * s.dt_divisor;
  g.t0 = 0.0;
  return g;
}

Waveform make_input(const Scenario& s, const TimeGrid& grid) {
  const double t_start = 0.125 * s.period * s.window_periods;
  if (s.type == ScenarioType::SinglePulse)
    return gaussian_pulse(s.pulse_fwhm, t_start, s.pulse_amplitude, grid);
  return pulse_train(s.n_pulses, s.spacing, s.pulse_fwhm, s.envelope, s.envelope_fwhm, t_start,
                     s.pulse_amplitude, grid);
}

ReportRow make_row(const Scenario& s, const CombSpectrum& comb, const FourierSeries& series,
                   const Waveform& input, const Waveform& output) {
  auto rep = make_report(input, output, s.period, comb.length(), s.delay_method,
                         s.echo_orders);
  ReportRow row;
  row.avg_optical_depth = average_optical_depth(comb);
  row.eta_measured = rep.efficiency;
  row.eta_analytic = efficiency_analytic(series, comb.length());
  row.tg_measured_s = rep.group_delay;
  row.tg_analytic_s = group_delay_analytic(series, comb.gamma(), comb.length());
  row.transmitted_fraction = rep.transmitted_fraction;
  return row;
}

void write_gnuplot_script(const std::filesystem::path& path, const Scenario& s) {
  std::ofstream f(path, std::ios::binary);
  f << "# gnuplot script for the '" << s.name << "' outputs\n";
  f << "set datafile separator ','\n";
  if (s.type == ScenarioType::SinglePulse || s.type == ScenarioType::PulseTrain) {
    f << "set xlabel 't [s]'\nset ylabel '|Omega|^2'\n";
    f << "plot '" << s.name << "_input.csv' using 1:($2**2+$3**2) with lines title 'input', \\\n";
    f << "     '" << s.name << "_output.csv' using 1:($2**2+$3**2) with lines title 'output'\n";
  } else if (s.type == ScenarioType::DelaySweep) {
    f << "set xlabel 'average optical depth'\nset ylabel 'delay [s]'\n";
    f << "plot '" << s.name << "_delay_sweep.csv' using 1:4 with linespoints title 'measured', \\\n";
    f << "     '" << s.name << "_delay_sweep.csv' using 1:5 with linespoints title 'analytic'\n";
  } else if (s.type == ScenarioType::WidthSweep) {
    f << "set xlabel 'Gamma*T'\nset ylabel 'efficiency'\n";
    f << "plot '" << s.name << "_width_sweep.csv' using 1:2 with linespoints title 'fourier', \\\n";
    f << "     '" << s.name << "_width_sweep.csv' using 1:3 with linespoints title 'literal'\n";
  }
}

RunResult run_pulse_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  RunResult result;
  auto comb = build_comb(s, result.warnings);
  auto series = fourier_coefficients(comb, s.fourier_order);
  auto tf = build_transfer(s, comb);
  auto grid = make_grid(s);
  auto input = make_input(s, grid);
  auto output = propagate(input, tf);
  auto row = make_row(s, comb, series, input, output);

  std::filesystem::create_directories(out_dir);
  const auto spectrum_path = out_dir / (s.name + "_spectrum.csv");
  const auto input_path = out_dir / (s.name + "_input.csv");
  const auto output_path = out_dir / (s.name + "_output.csv");
  const auto transfer_path = out_dir / (s.name + "_transfer.csv");
  const auto report_path = out_dir / (s.name + "_report.csv");
  write_spectrum_csv(spectrum_path, comb);
  write_waveform_csv(input_path, input);
  write_waveform_csv(output_path, output);
  write_transfer_csv(transfer_path, tf);
  write_report_csv(report_path, {row});
  result.outputs = {spectrum_path, input_path, output_path, transfer_path, report_path};
  return result;
}

RunResult run_delay_sweep(const Scenario& s, const std::filesystem::path& out_dir) {
  RunResult result;
  std::vector<ReportRow> rows(s.sweep_values.size());
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < s.sweep_values.size(); ++i) {
    Scenario point = s;
    point.type = ScenarioType::PulseTrain;
    point.alpha_max_per_m = s.sweep_values[i];
    auto comb = build_comb(point, warnings);
    auto series = fourier_coefficients(comb, point.fourier_order);
    auto tf = build_transfer(point, comb);
    auto grid = make_grid(point);
    auto input = make_input(point, grid);
    auto output = propagate(input, tf);
    rows[i] = make_row(point, comb, series, input, output);
  }
  result.warnings = std::move(warnings);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / (s.name + "_delay_sweep.csv");
  write_report_csv(path, rows);
  result.outputs = {path};
  return result;
}

RunResult run_width_sweep(const Scenario& s, const std::filesystem::path& out_dir) {
  RunResult result;
  const double depth = s.alpha_max_per_m * s.length;
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / (s.name + "_width_sweep.csv");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << "gamma_t,eta_fourier_consistent,eta_published\n";
  for (double x : s.sweep_values) {
    f << format_double(x) << ',' << format_double(efficiency_lorentzian(depth, x)) << ','
      << format_double(efficiency_lorentzian(depth, x, LorentzEfficiencyForm::Published))
      << '\n';
  }
  result.outputs = {path};
  return result;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  if (s.type == ScenarioType::None)
    return RunResult{{}, {"no scenario defined; nothing to do"}};
  RunResult result;
  switch (s.type) {
    case ScenarioType::SinglePulse:
    case ScenarioType::PulseTrain:
      result = run_pulse_scenario(s, out_dir);
      break;
    case ScenarioType::DelaySweep:
      result = run_delay_sweep(s, out_dir);
      break;
    case ScenarioType::WidthSweep:
      result = run_width_sweep(s, out_dir);
      break;
    case ScenarioType::None:
      break;
  }
  if (s.gnuplot && s.type != ScenarioType::None) {
    const auto gp = out_dir / (s.name + ".gp");
    write_gnuplot_script(gp, s);
    result.outputs.push_back(gp);
  }
  return result;
}

RunResult run_sweep(const Config& base_config, const std::string& axis,
                    const std::vector<double>& values, const std::filesystem::path& out_dir,
                    int jobs) {
  const auto dot = axis.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == axis.size())
    throw std::invalid_argument("sweep axis must be a section.key path");
  const std::string section = axis.substr(0, dot);
  const std::string key = axis.substr(dot + 1);

  // every point must validate before anything runs or is written
  std::vector<Scenario> points(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Config cfg = base_config;
    cfg.set(section, key, format_double(values[i]));
    points[i] = validate_scenario(cfg);
    if (points[i].type == ScenarioType::None)
      throw std::invalid_argument("sweep: config defines no scenario type");
    if (points[i].type == ScenarioType::DelaySweep ||
        points[i].type == ScenarioType::WidthSweep)
      throw std::invalid_argument("sweep: nested sweeps are not supported");
  }

  RunResult result;
  std::vector<ReportRow> rows(values.size());
  std::vector<std::vector<std::string>> point_warnings(values.size());

  const auto run_point = [&](std::size_t i) {
    const Scenario& p = points[i];
    auto comb = build_comb(p, point_warnings[i]);
    auto series = fourier_coefficients(comb, p.fourier_order);
    auto tf = build_transfer(p, comb);
    auto grid = make_grid(p);
    auto input = make_input(p, grid);
    auto output = propagate(input, tf);
    rows[i] = make_row(p, comb, series, input, output);
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) run_point(i);
  } else {
    std::size_t next = 0;
    while (next < values.size()) {
      std::vector<std::future<void>> batch;
      for (int j = 0; j < jobs && next < values.size(); ++j, ++next)
        batch.push_back(std::async(std::launch::async, run_point, next));
      for (auto& fut : batch) fut.get();
    }
  }

  for (auto& w : point_warnings)
    result.warnings.insert(result.warnings.end(), w.begin(), w.end());
  const Scenario base = validate_scenario(base_config);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / (base.name + "_sweep.csv");
  write_report_csv(path, rows);
  result.outputs = {path};
  return result;
}

}  // namespace afc::cli
