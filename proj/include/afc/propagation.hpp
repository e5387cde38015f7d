#pragma once

#include <span>
#include <vector>

#include "afc/response.hpp"
#include "afc/signals.hpp"
#include "afc/spectra.hpp"

namespace afc {

// Apply the medium response in the spectral domain: the input is zero-padded
// to the next power of two at least twice its length (room for the echo train
// to ring down without circular wrap), transformed, multiplied by H(omega)
// and transformed back. The returned waveform keeps dt and t0 and is longer
// than the input by the padding. The constant vacuum transit delay L/c is not
// applied (see TransferFunction::vacuum_delay).
Waveform propagate(const Waveform& w, const TransferFunction& h);

// Energy transmission through the bare absorption profile (no dispersion):
//   integral |X|^2 exp(-alpha(omega) L) domega / integral |X|^2 domega.
double energy_transmission_fraction(const CombSpectrum& comb, const SpectralField& input);

// Same, for a spectrally flat input: the one-period average of exp(-alpha L).
double flat_input_transmission(const CombSpectrum& comb);

// Near-peak transmission approximation exp(-alpha_max_L / (1 + 4 w^2/G^2)),
// implemented exactly as the closed-form approximation so its quality against
// the exact per-sample law is itself testable.
std::vector<double> transmission_profile_near_peak(double alpha_max_L, double gamma_opt,
                                                   std::span<const double> omega);

}  // namespace afc
