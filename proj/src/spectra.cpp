#include "afc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "afc/numeric.hpp"
#include "afc/units.hpp"

namespace afc {

namespace {

constexpr int kPeriodizationPeriods = 51;  // centers summed per sample
constexpr double kGridTolerance = 1e-9;    // relative, for uniformity checks

void check_grid_spec(const GridSpec& grid) {
  if (grid.samples_per_period < 2 || grid.samples_per_period % 2 != 0)
    throw std::invalid_argument("grid: samples_per_period must be even and >= 2");
  if (grid.periods < 1) throw std::invalid_argument("grid: periods must be >= 1");
}

std::vector<double> make_grid(double spacing, const GridSpec& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.samples_per_period) * grid.periods;
  const double step = spacing / grid.samples_per_period;
  const double start = -0.5 * spacing * grid.periods;
  std::vector<double> delta(n);
  for (std::size_t j = 0; j < n; ++j) delta[j] = start + step * static_cast<double>(j);
  return delta;
}

}  // namespace

CombSpectrum::CombSpectrum(std::vector<double> delta, std::vector<double> alpha,
                           double period_time, double length, double gamma, Alignment alignment)
    : delta_(std::move(delta)),
      alpha_(std::move(alpha)),
      period_time_(period_time),
      length_(length),
      gamma_(gamma),
      alignment_(alignment) {
  if (delta_.size() < 2 || delta_.size() != alpha_.size())
    throw std::invalid_argument("comb: need matching delta/alpha arrays with >= 2 samples");
  if (!(period_time_ > 0)) throw std::invalid_argument("comb: period_time must be > 0");
  if (!(length_ > 0)) throw std::invalid_argument("comb: length must be > 0");
  if (gamma_ < 0) throw std::invalid_argument("comb: gamma must be >= 0");

  const double step = delta_[1] - delta_[0];
  if (!(step > 0)) throw std::invalid_argument("comb: grid must be strictly increasing");
  for (std::size_t j = 1; j < delta_.size(); ++j) {
    if (std::abs(delta_[j] - delta_[j - 1] - step) > kGridTolerance * step)
      throw std::invalid_argument("comb: grid must be uniformly spaced");
  }

  double amax = 0;
  for (double a : alpha_) amax = std::max(amax, a);
  const double clip = 1e-9 * std::max(amax, 1e-300);
  for (double& a : alpha_) {
    if (a < 0) {
      if (a < -clip) throw std::invalid_argument("comb: absorption coefficient must be >= 0");
      a = 0;  // round-off ripple from synthesis
    }
  }
}

double CombSpectrum::spacing() const { return two_pi / period_time_; }

double CombSpectrum::grid_step() const { return delta_[1] - delta_[0]; }

double CombSpectrum::max_alpha() const {
  return *std::max_element(alpha_.begin(), alpha_.end());
}

std::size_t CombSpectrum::samples_per_period() const {
  const double step = grid_step();
  const double m_real = spacing() / step;
  const auto m = static_cast<std::size_t>(std::llround(m_real));
  if (m < 2 || std::abs(m_real - static_cast<double>(m)) > 1e-6)
    throw std::invalid_argument("comb: grid step is not commensurate with the spectral period");
  if (delta_.size() < m)
    throw std::invalid_argument("comb: grid covers less than one full spectral period");
  return m;
}

std::size_t CombSpectrum::period_start_index() const {
  // First sample of the most central full-period window.
  const std::size_t m = samples_per_period();
  if (delta_.size() == m) return 0;
  const double target = -0.5 * spacing();
  const double step = grid_step();
  auto idx = static_cast<long long>(std::llround((target - delta_.front()) / step));
  idx = std::clamp<long long>(idx, 0, static_cast<long long>(delta_.size() - m));
  return static_cast<std::size_t>(idx);
}

double CombSpectrum::alpha_at(double d) const {
  const std::size_t m = samples_per_period();
  const std::size_t j0 = period_start_index();
  const double step = grid_step();
  const double base = delta_[j0];
  double u = std::fmod(d - base, spacing());
  if (u < 0) u += spacing();
  const double pos = u / step;
  auto k = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(k);
  if (k >= m) k = m - 1;
  const double a0 = alpha_[j0 + k];
  const double a1 = alpha_[j0 + (k + 1) % m];
  return a0 + frac * (a1 - a0);
}

FourierSeries::FourierSeries(std::vector<std::complex<double>> coeffs_nonneg, double period_time)
    : coeffs_(std::move(coeffs_nonneg)), period_time_(period_time) {
  if (coeffs_.empty()) throw std::invalid_argument("fourier series: no coefficients");
  if (!(period_time_ > 0)) throw std::invalid_argument("fourier series: period_time must be > 0");
  const double a0_im = std::abs(coeffs_[0].imag());
  const double a0_re = coeffs_[0].real();
  const double scale = std::max(std::abs(a0_re), 1e-300);
  if (a0_im > 1e-9 * scale)
    throw std::invalid_argument("fourier series: alpha_0 must be real (series not Hermitian)");
  if (a0_re < -1e-12 * scale)
    throw std::invalid_argument("fourier series: alpha_0 must be >= 0");
  coeffs_[0] = std::complex<double>(std::max(a0_re, 0.0), 0.0);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    if (std::abs(coeffs_[n]) > coeffs_[0].real() * (1.0 + 1e-9) + 1e-12 * scale)
      throw std::invalid_argument(
          "fourier series: |alpha_n| <= alpha_0 violated (not a nonnegative spectrum)");
  }
}

std::complex<double> FourierSeries::coeff(int n) const {
  const int a = std::abs(n);
  if (a >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
  return n >= 0 ? coeffs_[a] : std::conj(coeffs_[a]);
}

CombSpectrum build_lorentzian_comb(double alpha_max, double hwhm, double period_time,
                                   double length, double gamma, Alignment alignment,
                                   const GridSpec& grid) {
  if (!(alpha_max > 0)) throw std::invalid_argument("lorentzian comb: alpha_max must be > 0");
  if (!(period_time > 0)) throw std::invalid_argument("lorentzian comb: period_time must be > 0");
  if (hwhm < 0) throw std::invalid_argument("lorentzian comb: hwhm must be >= 0");
  const double spacing = two_pi / period_time;
  if (hwhm >= 0.5 * spacing)
    throw std::invalid_argument("lorentzian comb: hwhm must be below half the comb spacing");
  check_grid_spec(grid);

  const double step = spacing / grid.samples_per_period;
  if (hwhm > 0 && hwhm < 8.0 * step) {
    const int needed = static_cast<int>(std::ceil(8.0 * spacing / hwhm));
    throw std::invalid_argument(
        "lorentzian comb: grid too coarse, hwhm needs >= 8 samples "
        "(samples_per_period >= " + std::to_string(needed) + ")");
  }

  std::vector<double> delta = make_grid(spacing, grid);
  std::vector<double> alpha(delta.size());
  const double center_offset = (alignment == Alignment::OnPeak) ? 0.0 : 0.5 * spacing;
  const int half = kPeriodizationPeriods / 2;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    // distance from the nearest periodic image of a peak centre
    const double u = wrap_centered(delta[j] - center_offset, spacing);
    if (hwhm == 0) {
      alpha[j] = (std::abs(u) < 0.5 * step) ? alpha_max : 0.0;
      continue;
    }
    double s = 0;
    for (int k = -half; k <= half; ++k) {
      const double x = u - k * spacing;
      s += hwhm * hwhm / (hwhm * hwhm + x * x);
    }
    alpha[j] = alpha_max * s;
  }
  return CombSpectrum(std::move(delta), std::move(alpha), period_time, length, gamma, alignment);
}

CombSpectrum build_square_comb(double alpha_background, double beta_hz, double mu,
                               double period_time, double length, double gamma,
                               Alignment alignment, const GridSpec& grid) {
  if (!(alpha_background > 0))
    throw std::invalid_argument("square comb: alpha_background must be > 0");
  if (!(period_time > 0)) throw std::invalid_argument("square comb: period_time must be > 0");
  if (beta_hz < 0 || mu < 0)
    throw std::invalid_argument("square comb: beta and mu must be >= 0");
  const double width_hz = 2.0 * beta_hz * mu;
  if (width_hz >= 1.0 / period_time)
    throw std::invalid_argument("square comb: transparency window (2*beta*mu) wider than the period");
  check_grid_spec(grid);

  const double spacing = two_pi / period_time;
  const double width = angular(width_hz);
  const double step = spacing / grid.samples_per_period;
  std::vector<double> delta = make_grid(spacing, grid);
  std::vector<double> alpha(delta.size());
  const double window_center = (alignment == Alignment::InWindow) ? 0.0 : 0.5 * spacing;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    const double u = wrap_centered(delta[j] - window_center, spacing);
    // fraction of the sample cell [u - step/2, u + step/2) inside a window,
    // including the neighbouring periodic images
    double covered = 0;
    for (int k = -1; k <= 1; ++k) {
      const double lo = std::max(u - 0.5 * step, k * spacing - 0.5 * width);
      const double hi = std::min(u + 0.5 * step, k * spacing + 0.5 * width);
      if (hi > lo) covered += hi - lo;
    }
    double fraction = covered / step;
    if (fraction > 1.0 - 1e-12) fraction = 1.0;  // deep inside a window
    if (fraction < 1e-12) fraction = 0.0;
    alpha[j] = alpha_background * (1.0 - fraction);
  }
  return CombSpectrum(std::move(delta), std::move(alpha), period_time, length, gamma, alignment);
}

FourierSeries fourier_coefficients(const CombSpectrum& comb, int n_max) {
  if (n_max < 0) throw std::invalid_argument("fourier_coefficients: n_max must be >= 0");
  const std::size_t m = comb.samples_per_period();
  if (static_cast<std::size_t>(n_max) >= m / 2)
    throw std::invalid_argument(
        "fourier_coefficients: n_max exceeds the Nyquist order of the grid (" +
        std::to_string(m / 2 - 1) + ")");

  const std::size_t j0 = comb.period_start_index();
  const double T = comb.period_time();
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      const double phase = -static_cast<double>(n) * comb.delta()[j0 + j] * T;
      acc += comb.alpha()[j0 + j] * std::polar(1.0, phase);
    }
    coeffs[n] = acc / static_cast<double>(m);
  }
  coeffs[0] = std::complex<double>(coeffs[0].real(), 0.0);  // exact Hermitian symmetry
  return FourierSeries(std::move(coeffs), T);
}

SynthesisResult synthesize_from_fourier(const FourierSeries& series, const GridSpec& grid,
                                        double length, double gamma, Alignment alignment) {
  if (series.order() < 1)
    throw std::invalid_argument("synthesize_from_fourier: series order must be >= 1");
  check_grid_spec(grid);

  const double T = series.period_time();
  const double spacing = two_pi / T;
  std::vector<double> delta = make_grid(spacing, grid);
  std::vector<double> alpha(delta.size());
  double min_alpha = 0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    double v = series.mean();
    for (int n = 1; n <= series.order(); ++n)
      v += 2.0 * (series.coeff(n) * std::polar(1.0, n * delta[j] * T)).real();
    min_alpha = std::min(min_alpha, v);
    alpha[j] = std::max(v, 0.0);
  }
  const double tol = 1e-6 * std::max(series.mean(), 1e-300);
  const bool warn = min_alpha < -tol;
  CombSpectrum comb(std::move(delta), std::move(alpha), T, length, gamma, alignment);
  return SynthesisResult{std::move(comb), min_alpha, warn};
}

double average_optical_depth(const CombSpectrum& comb) {
  const std::size_t m = comb.samples_per_period();
  const std::size_t j0 = comb.period_start_index();
  double acc = 0;
  for (std::size_t j = 0; j < m; ++j) acc += comb.alpha()[j0 + j];
  return acc / static_cast<double>(m) * comb.length();
}

}  // namespace afc
