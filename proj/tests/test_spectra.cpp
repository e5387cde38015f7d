#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "afc/spectra.hpp"
#include "afc/units.hpp"

using namespace afc;

namespace {

// Independent oracle: absorption of a comb of Lorentzian peaks at a single
// detuning, summed over many periods by brute force.
double lorentz_comb_direct(double delta, double alpha_max, double hwhm, double spacing,
                           double center_offset, int periods) {
  double s = 0;
  for (int k = -periods / 2; k <= periods / 2; ++k) {
    const double x = delta - center_offset - k * spacing;
    s += hwhm * hwhm / (hwhm * hwhm + x * x);
  }
  return alpha_max * s;
}

constexpr double kPeriod = 500e-9;  // s
constexpr double kLength = 5e-3;    // m

}  // namespace

TEST_CASE("lorentzian comb matches brute-force periodization at peak centres") {
  const double spacing = two_pi / kPeriod;
  const double hwhm = spacing / 3.0;  // strongly overlapping tails
  auto comb = build_lorentzian_comb(1320.0, hwhm, kPeriod, kLength, 0.0, Alignment::OnPeak,
                                    {256, 3});
  // the sample at delta = 0 sits on a peak centre
  std::size_t centre = 0;
  for (std::size_t j = 0; j < comb.delta().size(); ++j)
    if (std::abs(comb.delta()[j]) < 1e-6 * spacing) centre = j;
  const double expected = lorentz_comb_direct(0.0, 1320.0, hwhm, spacing, 0.0, 51);
  CHECK(comb.alpha()[centre] == doctest::Approx(expected).epsilon(1e-12));
  // overlap makes the peak noticeably higher than alpha_max here
  CHECK(comb.alpha()[centre] > 1320.0 * 1.2);

  // for a narrow comb the same value is within 2% of alpha_max
  auto narrow = build_lorentzian_comb(1320.0, 0.04 * spacing, kPeriod, kLength, 0.0,
                                      Alignment::OnPeak, {512, 1});
  CHECK(narrow.max_alpha() ==
        doctest::Approx(lorentz_comb_direct(0.0, 1320.0, 0.04 * spacing, spacing, 0.0, 51))
            .epsilon(1e-12));
  CHECK(narrow.max_alpha() == doctest::Approx(1320.0).epsilon(0.02));
}

TEST_CASE("lorentzian comb hwhm -> 0 degenerates to single-sample spikes") {
  auto comb = build_lorentzian_comb(7.0, 0.0, kPeriod, kLength, 0.0, Alignment::OnPeak, {64, 2});
  int spikes = 0;
  for (std::size_t j = 0; j < comb.alpha().size(); ++j) {
    if (comb.alpha()[j] != 0.0) {
      CHECK(comb.alpha()[j] == 7.0);
      ++spikes;
    }
  }
  CHECK(spikes == 2);
}

TEST_CASE("lorentzian comb parameter validation") {
  const double spacing = two_pi / kPeriod;
  CHECK_THROWS_AS(build_lorentzian_comb(-1.0, 0.1 * spacing, kPeriod, kLength, 0.0,
                                        Alignment::OnPeak, {64, 1}),
                  std::invalid_argument);
  // peaks wider than half the spacing
  CHECK_THROWS_AS(build_lorentzian_comb(10.0, 0.6 * spacing, kPeriod, kLength, 0.0,
                                        Alignment::OnPeak, {64, 1}),
                  std::invalid_argument);
  // grid too coarse to resolve the peaks
  CHECK_THROWS_WITH_AS(build_lorentzian_comb(10.0, 0.01 * spacing, kPeriod, kLength, 0.0,
                                             Alignment::OnPeak, {64, 1}),
                       doctest::Contains("samples_per_period"), std::invalid_argument);
}

TEST_CASE("square comb window geometry") {
  // beta = 120 kHz, mu = 2 -> 480 kHz windows on a 2 MHz comb
  auto comb = build_square_comb(1000.0, 120e3, 2.0, kPeriod, kLength, 0.0, Alignment::InWindow,
                                {1000, 1});
  // transparent exactly where |delta| < half the window width
  const double half_width = angular(0.5 * 480e3);
  int transparent = 0;
  for (std::size_t j = 0; j < comb.alpha().size(); ++j) {
    if (comb.alpha()[j] == 0.0) {
      ++transparent;
      CHECK(std::abs(comb.delta()[j]) < half_width + comb.grid_step());
    }
  }
  // 480 kHz / 2 MHz = 24% of the period
  CHECK(transparent == doctest::Approx(0.24 * 1000).epsilon(0.02));

  SUBCASE("mu = 0 gives a uniform absorber") {
    auto uniform = build_square_comb(1000.0, 120e3, 0.0, kPeriod, kLength, 0.0,
                                     Alignment::InWindow, {64, 1});
    for (double a : uniform.alpha()) CHECK(a == 1000.0);
  }
  SUBCASE("window wider than the period is rejected") {
    CHECK_THROWS_AS(build_square_comb(1000.0, 1.1e6, 1.0, kPeriod, kLength, 0.0,
                                      Alignment::InWindow, {64, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("fourier coefficients: constant spectrum") {
  auto comb = build_square_comb(42.0, 1.0, 0.0, kPeriod, kLength, 0.0, Alignment::OnPeak, {64, 1});
  auto series = fourier_coefficients(comb, 10);
  CHECK(series.mean() == doctest::Approx(42.0).epsilon(1e-12));
  for (int n = 1; n <= 10; ++n) CHECK(std::abs(series.coeff(n)) < 1e-12 * 42.0);
}

TEST_CASE("fourier coefficients of a lorentzian comb follow (aM G T/2) e^{-|n| G T}") {
  const double gamma_t = 0.2;
  const double hwhm = gamma_t / kPeriod;
  const double alpha_max = 10.0 / kLength;
  auto comb = build_lorentzian_comb(alpha_max, hwhm, kPeriod, kLength, 0.0, Alignment::OnPeak,
                                    {2048, 1});
  auto series = fourier_coefficients(comb, 30);
  for (int n = 0; n <= 30; ++n) {
    const double expected = 0.5 * alpha_max * gamma_t * std::exp(-n * gamma_t);
    // the closed form is the infinite periodization; the built comb sums 51
    // periods, so agreement is limited by the neglected tails
    CHECK(series.coeff(n).real() == doctest::Approx(expected).epsilon(2e-3));
    CHECK(std::abs(series.coeff(n).imag()) < 1e-9 * series.mean());
  }

  SUBCASE("quadrature converges: doubling the grid moves low orders < 1e-6 relative") {
    auto fine = fourier_coefficients(
        build_lorentzian_comb(alpha_max, hwhm, kPeriod, kLength, 0.0, Alignment::OnPeak,
                              {4096, 1}),
        15);
    for (int n = 0; n <= 7; ++n)
      CHECK(std::abs(fine.coeff(n) - series.coeff(n)) < 1e-6 * std::abs(series.coeff(n)));
    for (int n = 8; n <= 15; ++n)
      CHECK(std::abs(fine.coeff(n) - series.coeff(n)) < 1e-6 * series.mean());
  }

  SUBCASE("InWindow alignment flips the sign of odd coefficients") {
    auto shifted = fourier_coefficients(
        build_lorentzian_comb(alpha_max, hwhm, kPeriod, kLength, 0.0, Alignment::InWindow,
                              {2048, 1}),
        15);
    for (int n = 0; n <= 15; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(shifted.coeff(n).real() ==
            doctest::Approx(sign * series.coeff(n).real()).epsilon(1e-9));
    }
  }
}

TEST_CASE("fourier coefficients of a duty-1/2 square comb follow aM sin(n pi/2)/(n pi)") {
  // blocks centred on the carrier: build with OnPeak so the absorber straddles 0
  const double alpha_max = 800.0;
  const double duty_width_hz = 0.5 / kPeriod;  // half the period
  auto comb = build_square_comb(alpha_max, 0.5 * duty_width_hz, 1.0, kPeriod, kLength, 0.0,
                                Alignment::OnPeak, {2048, 1});
  auto series = fourier_coefficients(comb, 9);
  CHECK(series.mean() == doctest::Approx(0.5 * alpha_max).epsilon(1e-6));
  for (int n = 1; n <= 9; ++n) {
    const double expected = alpha_max * std::sin(0.5 * n * pi) / (n * pi);
    CHECK(series.coeff(n).real() == doctest::Approx(expected).epsilon(1e-3).scale(alpha_max));
    CHECK(std::abs(series.coeff(n).imag()) < 1e-9 * alpha_max);
  }
  CHECK(series.coeff(1).real() == doctest::Approx(alpha_max / pi).epsilon(1e-3));

  // moving the carrier into the window flips odd coefficients
  auto flipped = fourier_coefficients(
      build_square_comb(alpha_max, 0.5 * duty_width_hz, 1.0, kPeriod, kLength, 0.0,
                        Alignment::InWindow, {2048, 1}),
      9);
  CHECK(flipped.coeff(1).real() == doctest::Approx(-alpha_max / pi).epsilon(1e-3));
}

TEST_CASE("fourier coefficients respect the Nyquist order of the grid") {
  auto comb = build_square_comb(10.0, 1.0, 0.0, kPeriod, kLength, 0.0, Alignment::OnPeak, {64, 1});
  CHECK_THROWS_AS(fourier_coefficients(comb, 32), std::invalid_argument);
  CHECK_NOTHROW(fourier_coefficients(comb, 31));
}

TEST_CASE("series invariants: hermitian symmetry and positivity bound") {
  const double spacing = two_pi / kPeriod;
  auto comb = build_lorentzian_comb(500.0, 0.05 * spacing, kPeriod, kLength, 0.0,
                                    Alignment::InWindow, {1024, 1});
  auto series = fourier_coefficients(comb, 40);
  for (int n = 0; n <= 40; ++n) {
    CHECK(series.coeff(-n) == std::conj(series.coeff(n)));  // exact by construction
    CHECK(std::abs(series.coeff(n)) <= series.mean() * (1.0 + 1e-9));
  }
}

TEST_CASE("series constructor rejects non-Hermitian or unphysical coefficients") {
  using cd = std::complex<double>;
  CHECK_THROWS_AS(FourierSeries({cd(1.0, 0.5)}, kPeriod), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries({cd(-1.0, 0.0)}, kPeriod), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries({cd(1.0, 0.0), cd(2.0, 0.0)}, kPeriod), std::invalid_argument);
  CHECK_NOTHROW(FourierSeries({cd(1.0, 0.0), cd(0.3, 0.2)}, kPeriod));
}

TEST_CASE("synthesis: constant series reproduces a constant spectrum") {
  FourierSeries series({{5.0, 0.0}, {0.0, 0.0}}, kPeriod);
  auto result = synthesize_from_fourier(series, {64, 1}, kLength, 0.0, Alignment::OnPeak);
  CHECK_FALSE(result.truncation_warning);
  for (double a : result.comb.alpha()) CHECK(a == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("synthesis of a truncated lorentzian series stays within the tail bound") {
  const double gamma_t = 0.1;
  const double hwhm = gamma_t / kPeriod;
  const double alpha_max = 1000.0;
  const int n_max = 40;
  auto comb = build_lorentzian_comb(alpha_max, hwhm, kPeriod, kLength, 0.0, Alignment::OnPeak,
                                    {4096, 1});
  auto series = fourier_coefficients(comb, n_max);
  auto result = synthesize_from_fourier(series, {4096, 1}, kLength, 0.0, Alignment::OnPeak);
  double max_err = 0;
  for (std::size_t j = 0; j < comb.alpha().size(); ++j)
    max_err = std::max(max_err, std::abs(result.comb.alpha()[j] - comb.alpha()[j]));
  CHECK(max_err < std::exp(-n_max * gamma_t) * comb.max_alpha());
}

TEST_CASE("round trip: random Hermitian series is recovered to 1e-10") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int n_max = 12;
  std::vector<std::complex<double>> coeffs(n_max + 1);
  coeffs[0] = {10.0, 0.0};
  for (int n = 1; n <= n_max; ++n) {
    // keep sum |alpha_n| < alpha_0/2 so the synthesis stays positive
    coeffs[n] = std::complex<double>(uni(rng), uni(rng)) * (10.0 / (4.0 * n_max));
  }
  FourierSeries series(coeffs, kPeriod);
  auto synth = synthesize_from_fourier(series, {512, 1}, kLength, 0.0, Alignment::OnPeak);
  CHECK_FALSE(synth.truncation_warning);
  auto back = fourier_coefficients(synth.comb, n_max);
  for (int n = 0; n <= n_max; ++n)
    CHECK(std::abs(back.coeff(n) - series.coeff(n)) < 1e-10 * series.mean());
}

TEST_CASE("average optical depth") {
  SUBCASE("uniform absorber: alpha * L") {
    auto comb = build_square_comb(200.0, 1.0, 0.0, kPeriod, kLength, 0.0, Alignment::OnPeak,
                                  {64, 1});
    CHECK(average_optical_depth(comb) == doctest::Approx(200.0 * kLength).epsilon(1e-12));
  }
  SUBCASE("duty-1/2 square comb at aM L = 6 averages to 3") {
    auto comb = build_square_comb(6.0 / kLength, 0.25 / kPeriod, 1.0, kPeriod, kLength, 0.0,
                                  Alignment::InWindow, {2048, 1});
    CHECK(average_optical_depth(comb) == doctest::Approx(3.0).epsilon(1e-6));
  }
  SUBCASE("lorentzian comb aM L = 10, G T = 0.2 averages to 1") {
    auto comb = build_lorentzian_comb(10.0 / kLength, 0.2 / kPeriod, kPeriod, kLength, 0.0,
                                      Alignment::OnPeak, {2048, 1});
    CHECK(average_optical_depth(comb) == doctest::Approx(1.0).epsilon(2e-3));
  }
}
