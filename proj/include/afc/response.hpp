#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "afc/spectra.hpp"

namespace afc {

// Causal complex response per unit length chi(omega) of the absorber, such
// that the field envelope obeys d/dz Omega~ = -chi(omega) * Omega~ (the
// vacuum phase i*omega/c is excluded and tracked as a constant transit
// delay). Re chi -> alpha(omega)/2 as gamma -> 0, and Im chi carries the
// dispersion that the Kramers-Kronig relation ties to it.
//
// Evaluated as a convolution of the sampled absorption profile with the
// periodised homogeneous-line kernel sum_k 1/(gamma + i(x - k*spacing))
// = (T/2) * coth((gamma + i x) T/2), integrated exactly over each sample
// cell. gamma == 0 is handled as a principal value; the on-resonance delta
// contribution alpha(omega)/2 emerges from the pole cell.
std::vector<std::complex<double>> complex_susceptibility(const CombSpectrum& comb,
                                                         std::span<const double> omega);

std::complex<double> complex_susceptibility_at(const CombSpectrum& comb, double omega);

// Complex amplitude response H(omega) of a medium of length L.
class TransferFunction {
 public:
  enum class Kind { AnalyticFourier, SampledSusceptibility };

  // H(omega) = exp(-(L/2) [alpha_0 + 2 sum_{n>0} conj(alpha_n)
  //                        e^{-i n omega T} e^{-n gamma T}]).
  // The number of retained harmonics is the smallest n whose tail bound
  // |alpha_n| e^{-n gamma T} L drops below 1e-6, unless forced_order is
  // given; if the available series never satisfies the bound, the call is
  // rejected.
  static TransferFunction analytic(const FourierSeries& series, double gamma, double length,
                                   std::vector<double> omega_grid,
                                   std::optional<int> forced_order = std::nullopt);

  // H built from the sampled susceptibility of the comb on the given grid,
  // which must cover at least one full spectral period (values are extended
  // periodically beyond it).
  static TransferFunction sampled(const CombSpectrum& comb, std::vector<double> omega_grid);

  Kind kind() const { return kind_; }
  double length() const { return length_; }
  double period_time() const { return period_time_; }
  double vacuum_delay() const;  // L/c, reported separately from H

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  // Evaluate H at an arbitrary angular frequency (closed form for the
  // analytic kind, periodic interpolation of chi for the sampled kind).
  std::complex<double> value_at(double omega) const;

 private:
  TransferFunction() = default;

  Kind kind_{};
  double length_ = 0;
  double period_time_ = 0;
  double gamma_ = 0;
  int order_ = 0;
  std::vector<std::complex<double>> coeffs_;  // analytic kind: alpha_0..alpha_order
  std::vector<double> chi_grid_;              // sampled kind: one period of chi samples
  std::vector<std::complex<double>> chi_;
  std::vector<double> grid_;
  std::vector<std::complex<double>> values_;
};

// Real refractive index n(omega) = n_background + (c/omega_abs) Im chi(omega)
// with omega_abs = carrier_frequency + omega.
struct IndexProfile {
  std::vector<double> omega;  // baseband grid, rad/s
  std::vector<double> n;
  double n_background = 1.0;
  double carrier_frequency = 0;  // rad/s, absolute
};

IndexProfile refractive_index_profile(const CombSpectrum& comb, double carrier_frequency,
                                      std::span<const double> omega, double n_background = 1.0);

// Pointwise V_g = c / (n + omega_abs * dn/domega) with a 4th-order central
// difference for the derivative. Samples where the denominator vanishes to
// within 1e-12 are reported as +/- infinity.
std::vector<double> group_velocity_from_index(const IndexProfile& profile);

struct GroupVelocityResult {
  double inverse_velocity;  // s/m, 1/c - T sum_{n>0} n Re(alpha_n) e^{-n gamma T}
  double velocity;          // m/s; negative or infinite in the anomalous regime
  bool anomalous;           // true when 1/V_g <= 0
};

// Carrier group velocity from the Fourier series of the absorption profile.
// For combs aligned InWindow the Re(alpha_n) are dominantly negative and the
// result is slow light (0 < V_g < c).
GroupVelocityResult group_velocity_fourier(const FourierSeries& series, double gamma);

// T_g = L / V_g.
double group_delay_analytic(const FourierSeries& series, double gamma, double length);

}  // namespace afc
