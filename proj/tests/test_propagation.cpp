#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "afc/analysis.hpp"
#include "afc/propagation.hpp"
#include "afc/response.hpp"
#include "afc/signals.hpp"
#include "afc/spectra.hpp"
#include "afc/units.hpp"

using namespace afc;
using cd = std::complex<double>;

namespace {

constexpr double kPeriod = 500e-9;
constexpr double kLength = 5e-3;

TimeGrid grid_periods(int periods) {
  TimeGrid g;
  g.dt = kPeriod / 64.0;
  g.n = static_cast<std::size_t>(periods) * 64;
  g.t0 = 0.0;
  return g;
}

// gamma = 0 lorentzian comb with a prescribed average depth alpha_0 L
CombSpectrum depth_comb(double alpha0_L, double gamma_t, Alignment align,
                        int samples_per_period = 2048) {
  const double alpha_max = 2.0 * alpha0_L / (gamma_t * kLength);
  return build_lorentzian_comb(alpha_max, gamma_t / kPeriod, kPeriod, kLength, 0.0, align,
                               {samples_per_period, 1});
}

}  // namespace

TEST_CASE("identity medium returns the input unchanged") {
  FourierSeries unity({cd(0.0, 0.0), cd(0.0, 0.0)}, kPeriod);
  auto tf = TransferFunction::analytic(unity, 0.0, kLength, {});
  auto in = gaussian_pulse(100e-9, 5e-6, 1.0, grid_periods(32));
  auto out = propagate(in, tf);
  CHECK(out.size() >= in.size());
  for (std::size_t j = 0; j < in.size(); ++j)
    CHECK(std::abs(out.samples()[j] - in.samples()[j]) < 1e-13);
  for (std::size_t j = in.size(); j < out.size(); ++j)
    CHECK(std::abs(out.samples()[j]) < 1e-13);
}

TEST_CASE("uniform absorber follows Beer-Lambert in energy: alpha_0 L = 2 -> e^-2") {
  FourierSeries series({cd(2.0 / kLength, 0.0), cd(0.0, 0.0)}, kPeriod);
  auto tf = TransferFunction::analytic(series, 0.0, kLength, {});
  auto in = gaussian_pulse(100e-9, 5e-6, 1.0, grid_periods(32));
  auto out = propagate(in, tf);
  CHECK(out.energy() / in.energy() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("comb echoes: first and second orders match the closed forms") {
  // depth 3: at alpha_0 L = 2 the second-order amplitude a1^2/2 - a2 of a
  // lorentzian comb vanishes identically and the relative check degenerates
  const double gamma_t = 0.25;
  const double alpha0_L = 3.0;
  auto comb = depth_comb(alpha0_L, gamma_t, Alignment::InWindow);
  auto series = fourier_coefficients(comb, 80);
  auto tf = TransferFunction::analytic(series, 0.0, kLength, {});

  auto in = gaussian_pulse(100e-9, 20 * kPeriod, 1.0, grid_periods(256));
  auto out = propagate(in, tf);

  auto fractions = echo_energy_fractions(in, out, kPeriod, 4);
  const cd a1 = series.coeff(1) * kLength;
  const cd a2 = series.coeff(2) * kLength;
  const double damp = std::exp(-series.mean() * kLength);
  const double eta1 = std::norm(a1) * damp;
  // second-order echo amplitude: L^2 conj(a1)^2/2 - L conj(a2), from the
  // exponential expansion of the transfer function
  const double eta2 = std::norm(0.5 * a1 * a1 - a2) * damp;

  CHECK(fractions[1] == doctest::Approx(eta1).epsilon(1e-3).scale(0.0));
  CHECK(fractions[2] == doctest::Approx(eta2).epsilon(1e-3).scale(0.0));
  CHECK(echo_efficiency_measured(in, out, kPeriod, 1) ==
        doctest::Approx(eta1).epsilon(1e-3).scale(0.0));
}

TEST_CASE("propagation is linear: superposition to 1e-12") {
  auto comb = depth_comb(1.5, 0.3, Alignment::InWindow);
  auto tf = TransferFunction::analytic(fourier_coefficients(comb, 80), 0.0, kLength, {});
  auto grid = grid_periods(64);
  auto w1 = gaussian_pulse(100e-9, 5e-6, 1.0, grid);
  auto w2 = gaussian_pulse(150e-9, 7e-6, 0.7, grid);
  const cd a(0.8, 0.0), b(0.0, -1.3);

  std::vector<cd> mixed(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j)
    mixed[j] = a * w1.samples()[j] + b * w2.samples()[j];
  auto out_mixed = propagate(Waveform(mixed, grid.dt, grid.t0), tf);
  auto out1 = propagate(w1, tf);
  auto out2 = propagate(w2, tf);

  double worst = 0, scale = 0;
  for (std::size_t j = 0; j < out_mixed.size(); ++j) {
    const cd sup = a * out1.samples()[j] + b * out2.samples()[j];
    worst = std::max(worst, std::abs(out_mixed.samples()[j] - sup));
    scale = std::max(scale, std::abs(sup));
  }
  CHECK(worst < 1e-12 * scale);
}

TEST_CASE("time invariance: a grid-commensurate input delay shifts the output exactly") {
  auto comb = depth_comb(1.0, 0.25, Alignment::InWindow);
  auto tf = TransferFunction::analytic(fourier_coefficients(comb, 80), 0.0, kLength, {});
  auto grid = grid_periods(64);
  const std::size_t shift = 192;  // 3 periods
  auto in0 = gaussian_pulse(100e-9, 5e-6, 1.0, grid);
  auto in1 = gaussian_pulse(100e-9, 5e-6 + shift * grid.dt, 1.0, grid);
  auto out0 = propagate(in0, tf);
  auto out1 = propagate(in1, tf);
  double worst = 0;
  for (std::size_t j = 0; j + shift < out0.size(); ++j)
    worst = std::max(worst, std::abs(out1.samples()[j + shift] - out0.samples()[j]));
  CHECK(worst < 1e-12);
}

TEST_CASE("passivity and echo placement: no energy gain, no pre-echoes") {
  auto comb = depth_comb(2.0, 0.25, Alignment::InWindow);
  auto tf = TransferFunction::analytic(fourier_coefficients(comb, 80), 0.0, kLength, {});
  auto in = gaussian_pulse(100e-9, 20 * kPeriod, 1.0, grid_periods(256));
  auto out = propagate(in, tf);
  CHECK(out.energy() < in.energy());

  // energy before the input pulse window: below 1e-9 of the total
  const double t_lo = in.intensity_centroid() - 0.5 * kPeriod;
  double pre = 0, total = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double p = std::norm(out.samples()[j]);
    total += p;
    if (out.time_at(j) < t_lo) pre += p;
  }
  CHECK(pre / total < 1e-9);
}

TEST_CASE("energy transmission fraction") {
  SUBCASE("transparent comb transmits everything") {
    std::vector<double> delta(128), alpha(128, 0.0);
    const double spacing = two_pi / kPeriod;
    for (std::size_t j = 0; j < 128; ++j)
      delta[j] = -0.5 * spacing + spacing * static_cast<double>(j) / 128.0;
    CombSpectrum comb(delta, alpha, kPeriod, kLength, 0.0, Alignment::OnPeak);
    auto s = spectrum(gaussian_pulse(100e-9, 5e-6, 1.0, grid_periods(32)));
    CHECK(energy_transmission_fraction(comb, s) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("opaque duty-1/2 square comb passes half of a flat input") {
    auto comb = build_square_comb(30.0 / kLength, 0.25 / kPeriod, 1.0, kPeriod, kLength, 0.0,
                                  Alignment::InWindow, {2048, 1});
    CHECK(flat_input_transmission(comb) == doctest::Approx(0.5).epsilon(1e-3));
  }
  SUBCASE("zero input energy is rejected") {
    auto comb = build_square_comb(100.0, 1.0, 0.0, kPeriod, kLength, 0.0, Alignment::OnPeak,
                                  {64, 1});
    SpectralField empty;
    empty.values.assign(64, cd(0.0, 0.0));
    empty.dw = 1e5;
    empty.w0 = -32e5;
    CHECK_THROWS_AS(energy_transmission_fraction(comb, empty), std::invalid_argument);
  }
}

TEST_CASE("absorbed fraction halves from depth 20 to 80 at the optimal width") {
  // optimal width in the 1/sqrt(depth) scaling sense: Gamma_opt*T = 4/depth
  auto absorbed = [&](double depth) {
    const double hwhm = 4.0 / depth / kPeriod;
    auto comb = build_lorentzian_comb(depth / kLength, hwhm, kPeriod, kLength, 0.0,
                                      Alignment::InWindow, {8192, 1});
    return 1.0 - flat_input_transmission(comb);
  };
  const double ratio = absorbed(80.0) / absorbed(20.0);
  CHECK(ratio == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("near-peak transmission approximation") {
  const double g_opt = angular(100e3);
  SUBCASE("on peak: e^{-aM L}; far away: 1") {
    std::vector<double> w{0.0, 1e12};
    auto t = transmission_profile_near_peak(16.0, g_opt, w);
    CHECK(t[0] == doctest::Approx(std::exp(-16.0)).epsilon(1e-12).scale(0.0));
    CHECK(t[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("1/e crossing at (G/2) sqrt(aM L - 1) for aM L = 16") {
    const double w_cross = 0.5 * g_opt * std::sqrt(15.0);
    std::vector<double> w{w_cross};
    auto t = transmission_profile_near_peak(16.0, g_opt, w);
    CHECK(t[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
}
