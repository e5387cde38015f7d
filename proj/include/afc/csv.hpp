#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "afc/response.hpp"
#include "afc/signals.hpp"
#include "afc/spectra.hpp"

namespace afc {

// All CSV files are UTF-8 with '.' decimal points, '#' comment lines and a
// mandatory header row. Numeric formatting is fixed (%.12g) so identical
// inputs produce byte-identical files.

// Spectrum format: header "delta_hz,alpha_per_m", rows ascending in delta_hz.
void write_spectrum_csv(const std::filesystem::path& path, const CombSpectrum& comb);

struct LoadedSpectrum {
  CombSpectrum comb;
  std::size_t clipped_count = 0;    // negative alpha samples clipped to zero
  double raw_average_alpha = 0;     // pre-clipping mean over the file, 1/m
};

// Files must span at least two full spectral periods unless the caller
// explicitly allows periodic extension of a single period.
LoadedSpectrum load_measured_spectrum(const std::filesystem::path& path, double period_time,
                                      double length, double gamma, Alignment alignment,
                                      bool allow_single_period = false);

// Waveform format: header "t_s,re_omega,im_omega".
void write_waveform_csv(const std::filesystem::path& path, const Waveform& w);
Waveform read_waveform_csv(const std::filesystem::path& path);

// Transfer function format: header "omega_rad_s,re_H,im_H" over the grid.
void write_transfer_csv(const std::filesystem::path& path, const TransferFunction& tf);

struct ReportRow {
  double avg_optical_depth = 0;
  double eta_measured = 0;
  double eta_analytic = 0;
  double tg_measured_s = 0;
  double tg_analytic_s = 0;
  double transmitted_fraction = 0;
};

// Report format: one row per scenario, header
// "avg_optical_depth,eta_measured,eta_analytic,tg_measured_s,tg_analytic_s,transmitted_fraction".
void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

std::string format_double(double v);  // %.12g

}  // namespace afc
