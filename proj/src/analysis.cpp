#include "afc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "afc/fft.hpp"
#include "afc/units.hpp"

namespace afc {

namespace {

double window_energy(const Waveform& w, double lo, double hi) {
  double acc = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double t = w.time_at(j);
    if (t >= lo && t < hi) acc += std::norm(w.samples()[j]);
  }
  return acc * w.dt();
}

std::vector<double> box_smooth(const std::vector<double>& x, std::size_t width) {
  if (width < 2) return x;
  std::vector<double> out(x.size(), 0.0);
  // centred moving average via prefix sums
  std::vector<double> prefix(x.size() + 1, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) prefix[j + 1] = prefix[j] + x[j];
  const std::size_t half = width / 2;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::size_t lo = j > half ? j - half : 0;
    const std::size_t hi = std::min(x.size(), j + half + 1);
    out[j] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

}  // namespace

std::vector<double> echo_energy_fractions(const Waveform& input, const Waveform& output,
                                          double period, int max_order) {
  if (!(period > 0)) throw std::invalid_argument("echo energies: period must be > 0");
  if (max_order < 0) throw std::invalid_argument("echo energies: max_order must be >= 0");
  const double e_in = input.energy();
  if (e_in == 0) throw std::invalid_argument("echo energies: zero input energy");
  const double t_ref = input.intensity_centroid();
  std::vector<double> fractions(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) {
    const double lo = t_ref + k * period - 0.5 * period;
    const double hi = t_ref + k * period + 0.5 * period;
    fractions[k] = window_energy(output, lo, hi) / e_in;
  }
  return fractions;
}

double echo_efficiency_measured(const Waveform& input, const Waveform& output, double period,
                                int order) {
  if (!(period > 0)) throw std::invalid_argument("echo efficiency: period must be > 0");
  const double e_in = input.energy();
  if (e_in == 0) throw std::invalid_argument("echo efficiency: zero input energy");
  const double t_ref = input.intensity_centroid();
  const double lo = t_ref + order * period - 0.5 * period;
  const double hi = t_ref + order * period + 0.5 * period;
  if (order != 0) {
    const double leak = window_energy(input, lo, hi);
    if (leak > 1e-6 * e_in)
      throw std::invalid_argument(
          "echo efficiency: input support overlaps the requested echo window; "
          "use echo_energy_fractions for trains");
  }
  return window_energy(output, lo, hi) / e_in;
}

double efficiency_analytic(const FourierSeries& series, double length) {
  if (!(length > 0)) throw std::invalid_argument("efficiency: length must be > 0");
  const double a1L = std::abs(series.coeff(1)) * length;
  return a1L * a1L * std::exp(-series.mean() * length);
}

double efficiency_lorentzian(double depth, double gamma_t, LorentzEfficiencyForm form) {
  if (!(depth > 0) || !(gamma_t > 0))
    throw std::invalid_argument("efficiency: depth and gamma_t must be > 0");
  const double pref = (form == LorentzEfficiencyForm::FourierConsistent)
                          ? 0.5 * depth * gamma_t
                          : depth * gamma_t;
  return pref * pref * std::exp(-gamma_t * (2.0 + 0.5 * depth));
}

double optimal_width(double depth, double period) {
  if (!(depth > 0)) throw std::invalid_argument("optimal width: depth must be > 0");
  if (!(period > 0)) throw std::invalid_argument("optimal width: period must be > 0");
  return 4.0 / (4.0 + depth) / period;
}

double efficiency_optimal(double depth) {
  if (depth < 0) throw std::invalid_argument("optimal efficiency: depth must be >= 0");
  const double r = depth / (4.0 + depth);
  return 4.0 * std::exp(-2.0) * r * r;
}

DelayEstimate measure_group_delay(const Waveform& input, const Waveform& output,
                                  DelayMethod method, double smoothing_time,
                                  std::optional<std::pair<double, double>> output_window) {
  if (input.energy() == 0 || output.energy() == 0)
    throw std::invalid_argument("group delay: zero waveform");
  if (std::abs(input.dt() - output.dt()) > 1e-12 * input.dt())
    throw std::invalid_argument("group delay: waveforms must share the sample step");

  if (method == DelayMethod::Centroid) {
    double t_out;
    if (output_window) {
      double acc = 0, w = 0;
      for (std::size_t j = 0; j < output.size(); ++j) {
        const double t = output.time_at(j);
        if (t < output_window->first || t >= output_window->second) continue;
        const double p = std::norm(output.samples()[j]);
        acc += p * t;
        w += p;
      }
      if (w == 0) throw std::invalid_argument("group delay: empty output window");
      t_out = acc / w;
    } else {
      t_out = output.intensity_centroid();
    }
    return DelayEstimate{t_out - input.intensity_centroid(), false};
  }

  // cross-correlation of box-smoothed intensity envelopes
  const double dt = input.dt();
  auto width = static_cast<std::size_t>(std::llround(smoothing_time / dt));
  std::vector<double> env_in(input.size()), env_out(output.size());
  for (std::size_t j = 0; j < input.size(); ++j) env_in[j] = std::norm(input.samples()[j]);
  for (std::size_t j = 0; j < output.size(); ++j) env_out[j] = std::norm(output.samples()[j]);
  env_in = box_smooth(env_in, width);
  env_out = box_smooth(env_out, width);

  const std::size_t nfft = fft::next_pow2(env_in.size() + env_out.size());
  std::vector<std::complex<double>> a(nfft, {0.0, 0.0}), b(nfft, {0.0, 0.0});
  for (std::size_t j = 0; j < env_in.size(); ++j) a[j] = env_in[j];
  for (std::size_t j = 0; j < env_out.size(); ++j) b[j] = env_out[j];
  auto fa = fft::forward(a);
  auto fb = fft::forward(b);
  for (std::size_t k = 0; k < nfft; ++k) fa[k] = fb[k] * std::conj(fa[k]);
  auto corr_c = fft::inverse(fa);
  std::vector<double> corr(nfft);
  for (std::size_t k = 0; k < nfft; ++k) corr[k] = corr_c[k].real();

  // lag k means the output envelope leads the input by k samples (mod nfft)
  std::size_t best = 0;
  for (std::size_t k = 1; k < nfft; ++k)
    if (corr[k] > corr[best]) best = k;

  bool ambiguous = false;
  const auto guard = static_cast<long long>(std::max<std::size_t>(width, 2));
  for (std::size_t k = 0; k < nfft; ++k) {
    const double prev = corr[(k + nfft - 1) % nfft];
    const double next = corr[(k + 1) % nfft];
    if (corr[k] < prev || corr[k] < next) continue;  // not a local maximum
    long long sep = static_cast<long long>(k) - static_cast<long long>(best);
    if (sep > static_cast<long long>(nfft) / 2) sep -= static_cast<long long>(nfft);
    if (sep < -static_cast<long long>(nfft) / 2) sep += static_cast<long long>(nfft);
    if (std::llabs(sep) <= guard) continue;
    if (corr[k] >= 0.98 * corr[best]) ambiguous = true;
  }

  const double prev = corr[(best + nfft - 1) % nfft];
  const double next = corr[(best + 1) % nfft];
  double frac = 0;
  const double denom = prev - 2.0 * corr[best] + next;
  if (denom < 0) frac = 0.5 * (prev - next) / denom;

  double lag = static_cast<double>(best);
  if (lag > static_cast<double>(nfft) / 2) lag -= static_cast<double>(nfft);
  const double delay = (lag + frac) * dt + (output.t0() - input.t0());
  return DelayEstimate{delay, ambiguous};
}

Waveform decompose_train_response(const Waveform& single_pulse_output,
                                  std::span<const double> pulse_times,
                                  std::span<const std::complex<double>> pulse_weights,
                                  double single_pulse_time, bool resample) {
  if (pulse_times.size() != pulse_weights.size() || pulse_times.empty())
    throw std::invalid_argument("decompose: need matching, nonempty times and weights");
  const double dt = single_pulse_output.dt();
  const std::size_t n = single_pulse_output.size();

  std::vector<double> shifts(pulse_times.size());
  bool all_integer = true;
  long long k_min = 0, k_max = 0;
  for (std::size_t p = 0; p < pulse_times.size(); ++p) {
    shifts[p] = pulse_times[p] - single_pulse_time;
    const double pos = shifts[p] / dt;
    const auto k = static_cast<long long>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(k)) > 1e-6) all_integer = false;
    k_min = std::min(k_min, k);
    k_max = std::max(k_max, k);
  }
  if (!all_integer && !resample)
    throw std::invalid_argument(
        "decompose: pulse shifts are not grid-commensurate; enable resampling");

  const auto offset = static_cast<std::size_t>(-k_min);
  const std::size_t out_n = n + static_cast<std::size_t>(k_max - k_min);
  const double out_t0 = single_pulse_output.t0() + static_cast<double>(k_min) * dt;

  if (all_integer) {
    std::vector<std::complex<double>> out(out_n, {0.0, 0.0});
    for (std::size_t p = 0; p < shifts.size(); ++p) {
      const auto k = static_cast<long long>(std::llround(shifts[p] / dt));
      const auto base = static_cast<std::size_t>(k - k_min);
      for (std::size_t j = 0; j < n; ++j)
        out[base + j] += pulse_weights[p] * single_pulse_output.samples()[j];
    }
    return Waveform(std::move(out), dt, out_t0);
  }

  // fractional shifts as spectral phase ramps
  const std::size_t nfft = fft::next_pow2(out_n);
  std::vector<std::complex<double>> base(nfft, {0.0, 0.0});
  std::copy(single_pulse_output.samples().begin(), single_pulse_output.samples().end(),
            base.begin() + static_cast<long long>(offset));
  auto spec = fft::forward(base);
  const double dw = two_pi / (dt * static_cast<double>(nfft));
  std::vector<std::complex<double>> acc(nfft, {0.0, 0.0});
  for (std::size_t p = 0; p < shifts.size(); ++p) {
    for (std::size_t k = 0; k < nfft; ++k) {
      const double omega = (k <= nfft / 2)
                               ? dw * static_cast<double>(k)
                               : dw * (static_cast<double>(k) - static_cast<double>(nfft));
      acc[k] += pulse_weights[p] * spec[k] * std::polar(1.0, -omega * shifts[p]);
    }
  }
  auto shifted = fft::inverse(acc);
  shifted.resize(out_n);
  return Waveform(std::move(shifted), dt, out_t0);
}

DelayEfficiencyReport make_report(const Waveform& input, const Waveform& output, double period,
                                  double length, DelayMethod method, int max_order) {
  DelayEfficiencyReport r;
  r.echo_energies = echo_energy_fractions(input, output, period, max_order);
  r.efficiency = r.echo_energies.size() > 1 ? r.echo_energies[1] : 0.0;
  r.transmitted_fraction = output.energy() / input.energy();
  r.group_delay = measure_group_delay(input, output, method, period).delay;
  r.group_velocity = (r.group_delay != 0) ? length / r.group_delay
                                          : std::numeric_limits<double>::infinity();

  double total = 0;
  for (double e : r.echo_energies) total += e;
  if (r.efficiency < 0 || r.efficiency > 1 + 1e-9 || total > 1 + 1e-9 ||
      r.transmitted_fraction > 1 + 1e-9)
    throw std::runtime_error("report: energy accounting outside [0, 1]");
  r.efficiency = std::min(r.efficiency, 1.0);
  r.transmitted_fraction = std::min(r.transmitted_fraction, 1.0);
  return r;
}

}  // namespace afc
