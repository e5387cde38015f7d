#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace afc {

struct TimeGrid {
  double dt = 0;      // s
  double t0 = 0;      // time of first sample, s
  std::size_t n = 0;  // sample count
};

// Uniformly sampled complex baseband envelope. The amplitude scale is
// arbitrary in the linear regime; only energy ratios are reported.
class Waveform {
 public:
  Waveform(std::vector<std::complex<double>> samples, double dt, double t0);

  const std::vector<std::complex<double>>& samples() const { return samples_; }
  std::vector<std::complex<double>>& samples() { return samples_; }
  double dt() const { return dt_; }
  double t0() const { return t0_; }
  std::size_t size() const { return samples_.size(); }
  double time_at(std::size_t j) const { return t0_ + dt_ * static_cast<double>(j); }

  double energy() const;             // sum |x|^2 * dt
  double intensity_centroid() const;  // energy-weighted mean time

 private:
  std::vector<std::complex<double>> samples_;
  double dt_;
  double t0_;
};

// Complex amplitude over a uniform ascending angular-frequency grid,
// omega_j = w0 + j*dw. Normalised as a continuous Fourier transform
// (values carry units of amplitude * time), so energies satisfy
// sum |X|^2 dw / (2*pi) == sum |x|^2 dt.
struct SpectralField {
  std::vector<std::complex<double>> values;
  double dw = 0;
  double w0 = 0;
  double t_ref = 0;  // time of the first sample of the originating waveform

  std::size_t size() const { return values.size(); }
  double omega_at(std::size_t j) const { return w0 + dw * static_cast<double>(j); }
  double energy() const;
};

// Gaussian pulse of the given intensity FWHM centred at `center`.
Waveform gaussian_pulse(double fwhm, double center, double amplitude, const TimeGrid& grid);

enum class TrainEnvelope { Flat, Gaussian };

// Train of identical Gaussian pulses at t_first + j*spacing, with unit peak
// amplitude per pulse before envelope weighting. For a Gaussian envelope the
// weights follow a field profile whose intensity FWHM is envelope_fwhm,
// centred on the middle of the train.
Waveform pulse_train(int n_pulses, double spacing, double pulse_fwhm, TrainEnvelope envelope,
                     double envelope_fwhm, double t_first, double amplitude,
                     const TimeGrid& grid);

// Chirped hyperbolic-secant pulse amplitude * sech(b*t)^(1 - i*mu) centred at
// t = 0, with b = 2*pi*beta_hz. The instantaneous ordinary frequency is
// mu * beta_hz * tanh(b*t), sweeping between -mu*beta_hz and +mu*beta_hz.
Waveform chs_waveform(double amplitude, double beta_hz, double mu, const TimeGrid& grid);

// Unitary transform bridge (FFT based); spectrum/inverse_spectrum round-trip
// to machine precision and Parseval holds exactly up to rounding.
SpectralField spectrum(const Waveform& w);
Waveform inverse_spectrum(const SpectralField& s);

}  // namespace afc
