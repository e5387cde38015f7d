#include "afc/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "afc/fft.hpp"
#include "afc/units.hpp"

namespace afc {

Waveform propagate(const Waveform& w, const TransferFunction& h) {
  const std::size_t n = w.size();
  const std::size_t nfft = fft::next_pow2(2 * n);
  std::vector<std::complex<double>> padded(nfft, {0.0, 0.0});
  std::copy(w.samples().begin(), w.samples().end(), padded.begin());

  auto spec = fft::forward(padded);
  const double dw = two_pi / (w.dt() * static_cast<double>(nfft));
  for (std::size_t k = 0; k < nfft; ++k) {
    const double omega = (k <= nfft / 2) ? dw * static_cast<double>(k)
                                         : dw * (static_cast<double>(k) - static_cast<double>(nfft));
    spec[k] *= h.value_at(omega);
  }
  auto out = fft::inverse(spec);
  return Waveform(std::move(out), w.dt(), w.t0());
}

double energy_transmission_fraction(const CombSpectrum& comb, const SpectralField& input) {
  double num = 0, den = 0;
  for (std::size_t j = 0; j < input.size(); ++j) {
    const double p = std::norm(input.values[j]);
    den += p;
    num += p * std::exp(-comb.alpha_at(input.omega_at(j)) * comb.length());
  }
  if (den == 0) throw std::invalid_argument("transmission fraction: zero input energy");
  return num / den;
}

double flat_input_transmission(const CombSpectrum& comb) {
  const std::size_t m = comb.samples_per_period();
  const std::size_t j0 = comb.period_start_index();
  double acc = 0;
  for (std::size_t j = 0; j < m; ++j)
    acc += std::exp(-comb.alpha()[j0 + j] * comb.length());
  return acc / static_cast<double>(m);
}

std::vector<double> transmission_profile_near_peak(double alpha_max_L, double gamma_opt,
                                                   std::span<const double> omega) {
  if (!(alpha_max_L > 0) || !(gamma_opt > 0))
    throw std::invalid_argument("transmission profile: parameters must be > 0");
  std::vector<double> out(omega.size());
  for (std::size_t j = 0; j < omega.size(); ++j) {
    const double r = 2.0 * omega[j] / gamma_opt;
    out[j] = std::exp(-alpha_max_L / (1.0 + r * r));
  }
  return out;
}

}  // namespace afc
