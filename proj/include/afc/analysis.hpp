#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "afc/signals.hpp"
#include "afc/spectra.hpp"

namespace afc {

// Energy of the output in the half-open window [k*T - T/2, k*T + T/2) around
// the input pulse's intensity centroid, as a fraction of the input energy.
// k = 1 is the protocol efficiency. Throws if the input itself carries more
// than a relative 1e-6 of its energy inside a window of order k != 0.
double echo_efficiency_measured(const Waveform& input, const Waveform& output, double period,
                                int order);

// Energy fractions for orders 0..max_order at once (no input-overlap check
// beyond order 0, for use with trains that span several windows).
std::vector<double> echo_energy_fractions(const Waveform& input, const Waveform& output,
                                          double period, int max_order);

// First-echo efficiency |alpha_1 L|^2 exp(-alpha_0 L) from the Fourier series
// of the absorption profile.
double efficiency_analytic(const FourierSeries& series, double length);

enum class LorentzEfficiencyForm {
  FourierConsistent,  // (d x / 2)^2 exp(-x (2 + d/2)), the default
  Published,          // (d x)^2 exp(-x (2 + d/2)), 4x larger at its optimum
};

// Closed-form efficiency of a Lorentzian-peak comb with peak optical depth
// d = alpha_max*L and dimensionless width x = Gamma*T. The default form
// follows from the comb's Fourier coefficients combined with the first-echo
// law; the published large-depth formula lacks the 1/2 on the prefactor and
// is kept available for comparison.
double efficiency_lorentzian(double depth, double gamma_t,
                             LorentzEfficiencyForm form = LorentzEfficiencyForm::FourierConsistent);

// Exact maximiser of efficiency_lorentzian over Gamma*T at fixed depth:
// Gamma_opt*T = 4/(4 + depth), returned in rad/s for the given period.
double optimal_width(double depth, double period);

// Efficiency at the optimal width, 4 e^{-2} d^2/(4+d)^2; tends to
// 4 e^{-2} ~ 0.5413 at large depth.
double efficiency_optimal(double depth);

enum class DelayMethod { Centroid, CrossCorrelation };

struct DelayEstimate {
  double delay = 0;
  bool ambiguous = false;  // cross-correlation only: near-degenerate maxima
};

// Envelope delay of output relative to input. The centroid method compares
// intensity-weighted mean times (optionally restricted to a time window on
// the output); cross-correlation compares box-smoothed intensity envelopes
// with sub-sample parabolic refinement of the best lag.
DelayEstimate measure_group_delay(const Waveform& input, const Waveform& output,
                                  DelayMethod method, double smoothing_time = 0.0,
                                  std::optional<std::pair<double, double>> output_window =
                                      std::nullopt);

// Linear superposition of time-shifted, weighted copies of a single-pulse
// response. Shifts must land on the sample grid unless resample is set, in
// which case fractional shifts are applied as exact spectral phase ramps.
Waveform decompose_train_response(const Waveform& single_pulse_output,
                                  std::span<const double> pulse_times,
                                  std::span<const std::complex<double>> pulse_weights,
                                  double single_pulse_time, bool resample = false);

struct DelayEfficiencyReport {
  double efficiency = 0;            // first-echo energy fraction
  double group_delay = 0;           // measured envelope delay, s
  double group_velocity = 0;        // length / group_delay, m/s
  double transmitted_fraction = 0;  // output energy / input energy
  std::vector<double> echo_energies;
};

DelayEfficiencyReport make_report(const Waveform& input, const Waveform& output, double period,
                                  double length, DelayMethod method, int max_order = 10);

}  // namespace afc
