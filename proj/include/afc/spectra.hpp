#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace afc {

// Position of the signal carrier (detuning 0) relative to the comb.
//   OnPeak   - an absorption peak is centred on the carrier.
//   InWindow - a transparency window is centred on the carrier (peaks sit at
//              half-integer multiples of the spacing).
enum class Alignment { OnPeak, InWindow };

struct GridSpec {
  int samples_per_period = 256;  // must be even
  int periods = 1;               // full spectral periods, centred on delta = 0
};

// Sampled absorption coefficient alpha(delta) of a spectrally periodic
// absorber, together with the medium geometry. delta is the baseband detuning
// from the signal carrier in rad/s, alpha in 1/m. The comb spacing in the
// spectral domain is 2*pi/period_time.
class CombSpectrum {
 public:
  CombSpectrum(std::vector<double> delta, std::vector<double> alpha, double period_time,
               double length, double gamma, Alignment alignment);

  const std::vector<double>& delta() const { return delta_; }
  const std::vector<double>& alpha() const { return alpha_; }
  double period_time() const { return period_time_; }
  double length() const { return length_; }
  double gamma() const { return gamma_; }
  Alignment alignment() const { return alignment_; }

  double spacing() const;    // 2*pi/period_time, rad/s
  double grid_step() const;  // uniform sample spacing, rad/s
  double max_alpha() const;

  // Periodic linear interpolation of alpha at an arbitrary detuning.
  double alpha_at(double delta) const;

  // Number of samples in one spectral period; throws if the grid is not
  // commensurate with the period or covers less than one period.
  std::size_t samples_per_period() const;

  // Index of the first sample of a full-period window.
  std::size_t period_start_index() const;

 private:
  std::vector<double> delta_;
  std::vector<double> alpha_;
  double period_time_;
  double length_;
  double gamma_;
  Alignment alignment_;
};

// Fourier coefficients alpha_n of the periodised absorption profile,
// alpha(delta) = sum_n coeff(n) exp(i*n*delta*period_time). Only n >= 0 is
// stored; negative orders follow from Hermitian symmetry (alpha is real), so
// coeff(-n) == conj(coeff(n)) holds exactly.
class FourierSeries {
 public:
  FourierSeries(std::vector<std::complex<double>> coeffs_nonneg, double period_time);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::complex<double> coeff(int n) const;
  double mean() const { return coeffs_[0].real(); }  // alpha_0
  double period_time() const { return period_time_; }

 private:
  std::vector<std::complex<double>> coeffs_;
  double period_time_;
};

// Comb of Lorentzian absorption peaks, alpha_max * hwhm^2 / (hwhm^2 + x^2),
// periodised by explicit summation over 51 neighbouring periods. hwhm == 0
// degenerates to single-sample spikes of height alpha_max.
CombSpectrum build_lorentzian_comb(double alpha_max, double hwhm, double period_time,
                                   double length, double gamma, Alignment alignment,
                                   const GridSpec& grid);

// Uniform absorber of alpha_background with one rectangular transparency
// window per period. The window full width is 2*beta_hz*mu in ordinary
// frequency, the idealised outcome of burning with a chirped pulse of sweep
// rate parameter beta_hz (Hz) and chirp index mu. Samples covering a window
// edge are cell-averaged.
CombSpectrum build_square_comb(double alpha_background, double beta_hz, double mu,
                               double period_time, double length, double gamma,
                               Alignment alignment, const GridSpec& grid);

// Trapezoidal (periodic rectangle) quadrature of
//   alpha_n = (T / 2*pi) * integral over one period of alpha(d) e^{-i n d T} dd
// over exactly one period of the sampled grid.
FourierSeries fourier_coefficients(const CombSpectrum& comb, int n_max);

struct SynthesisResult {
  CombSpectrum comb;
  double min_alpha;         // most negative raw value before clipping
  bool truncation_warning;  // true if the synthesis dipped below -tolerance
};

// Evaluate the series on a fresh grid. Truncation can produce small negative
// excursions; these are clipped to zero and flagged.
SynthesisResult synthesize_from_fourier(const FourierSeries& series, const GridSpec& grid,
                                        double length, double gamma, Alignment alignment);

// alpha_0 * L, the average optical depth quoted alongside delay measurements.
double average_optical_depth(const CombSpectrum& comb);

}  // namespace afc
