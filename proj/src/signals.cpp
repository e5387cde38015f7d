#include "afc/signals.hpp"

#include <cmath>
#include <stdexcept>

#include "afc/fft.hpp"
#include "afc/units.hpp"

namespace afc {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;

double gaussian_field(double t, double center, double intensity_fwhm) {
  const double x = (t - center) / intensity_fwhm;
  return std::exp(-2.0 * kLn2 * x * x);
}

// log(cosh(x)) and sech(x) in overflow-safe form
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

double sech(double x) {
  const double a = std::abs(x);
  const double e = std::exp(-a);
  return 2.0 * e / (1.0 + e * e);
}

void check_grid(const TimeGrid& grid) {
  if (!(grid.dt > 0) || grid.n < 2)
    throw std::invalid_argument("time grid: dt must be > 0 and n >= 2");
}

}  // namespace

Waveform::Waveform(std::vector<std::complex<double>> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
  if (samples_.empty()) throw std::invalid_argument("waveform: empty sample array");
  if (!(dt_ > 0)) throw std::invalid_argument("waveform: dt must be > 0");
}

double Waveform::energy() const {
  double acc = 0;
  for (const auto& v : samples_) acc += std::norm(v);
  return acc * dt_;
}

double Waveform::intensity_centroid() const {
  double acc = 0, w = 0;
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    const double p = std::norm(samples_[j]);
    acc += p * time_at(j);
    w += p;
  }
  if (w == 0) throw std::runtime_error("waveform: centroid of a zero waveform");
  return acc / w;
}

double SpectralField::energy() const {
  double acc = 0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * dw / two_pi;
}

Waveform gaussian_pulse(double fwhm, double center, double amplitude, const TimeGrid& grid) {
  check_grid(grid);
  if (!(fwhm > 0)) throw std::invalid_argument("gaussian_pulse: fwhm must be > 0");
  if (fwhm < 8.0 * grid.dt)
    throw std::invalid_argument("gaussian_pulse: grid too coarse, need fwhm >= 8*dt");
  if (amplitude < 0) throw std::invalid_argument("gaussian_pulse: amplitude must be >= 0");
  std::vector<std::complex<double>> s(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double t = grid.t0 + grid.dt * static_cast<double>(j);
    s[j] = amplitude * gaussian_field(t, center, fwhm);
  }
  return Waveform(std::move(s), grid.dt, grid.t0);
}

Waveform pulse_train(int n_pulses, double spacing, double pulse_fwhm, TrainEnvelope envelope,
                     double envelope_fwhm, double t_first, double amplitude,
                     const TimeGrid& grid) {
  check_grid(grid);
  if (n_pulses < 1) throw std::invalid_argument("pulse_train: n_pulses must be >= 1");
  if (!(pulse_fwhm > 0)) throw std::invalid_argument("pulse_train: pulse_fwhm must be > 0");
  if (pulse_fwhm < 8.0 * grid.dt)
    throw std::invalid_argument("pulse_train: grid too coarse, need pulse_fwhm >= 8*dt");
  if (n_pulses > 1 && !(spacing > pulse_fwhm))
    throw std::invalid_argument("pulse_train: pulses overlap, need spacing > pulse_fwhm");
  if (envelope == TrainEnvelope::Gaussian && !(envelope_fwhm > 0))
    throw std::invalid_argument("pulse_train: envelope_fwhm must be > 0");

  const double t_mid = t_first + 0.5 * spacing * (n_pulses - 1);
  std::vector<std::complex<double>> s(grid.n, {0.0, 0.0});
  for (int p = 0; p < n_pulses; ++p) {
    const double tp = t_first + spacing * p;
    const double w = (envelope == TrainEnvelope::Gaussian)
                         ? gaussian_field(tp, t_mid, envelope_fwhm)
                         : 1.0;
    for (std::size_t j = 0; j < grid.n; ++j) {
      const double t = grid.t0 + grid.dt * static_cast<double>(j);
      s[j] += amplitude * w * gaussian_field(t, tp, pulse_fwhm);
    }
  }
  return Waveform(std::move(s), grid.dt, grid.t0);
}

Waveform chs_waveform(double amplitude, double beta_hz, double mu, const TimeGrid& grid) {
  check_grid(grid);
  if (!(beta_hz > 0)) throw std::invalid_argument("chs_waveform: beta must be > 0");
  if (mu < 0) throw std::invalid_argument("chs_waveform: mu must be >= 0");
  const double b = angular(beta_hz);
  const double span = grid.dt * static_cast<double>(grid.n - 1);
  if (span * b < 10.0)
    throw std::invalid_argument("chs_waveform: grid must span at least 10/(2*pi*beta)");
  std::vector<std::complex<double>> s(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double t = grid.t0 + grid.dt * static_cast<double>(j);
    const double env = amplitude * sech(b * t);
    const double phase = mu * log_cosh(b * t);
    s[j] = std::polar(env, phase);
  }
  return Waveform(std::move(s), grid.dt, grid.t0);
}

SpectralField spectrum(const Waveform& w) {
  const std::size_t n = w.size();
  auto raw = fft::forward(w.samples());
  const double dw = two_pi / (w.dt() * static_cast<double>(n));
  const std::size_t half = n / 2;  // index count of negative frequencies
  SpectralField out;
  out.values.resize(n);
  out.dw = dw;
  out.w0 = -dw * static_cast<double>(half);
  out.t_ref = w.t0();
  for (std::size_t j = 0; j < n; ++j) {
    // ascending omega order: raw index k carries omega = k*dw (k < n-half) or (k-n)*dw
    const std::size_t k = (j + (n - half)) % n;
    const double omega = out.omega_at(j);
    out.values[j] = raw[k] * w.dt() * std::polar(1.0, -omega * w.t0());
  }
  return out;
}

Waveform inverse_spectrum(const SpectralField& s) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("inverse_spectrum: need >= 2 samples");
  const double dt = two_pi / (s.dw * static_cast<double>(n));
  const std::size_t half = n / 2;
  std::vector<std::complex<double>> raw(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + (n - half)) % n;
    const double omega = s.omega_at(j);
    raw[k] = s.values[j] / dt * std::polar(1.0, omega * s.t_ref);
  }
  auto x = fft::inverse(raw);
  return Waveform(std::move(x), dt, s.t_ref);
}

}  // namespace afc
