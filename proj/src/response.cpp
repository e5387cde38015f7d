#include "afc/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "afc/fft.hpp"
#include "afc/numeric.hpp"
#include "afc/units.hpp"

namespace afc {

namespace {

using cplx = std::complex<double>;

// Exact integral of the periodised line kernel
//   K(x) = sum_k 1/(gamma + i(x - k*spacing)) = (T/2) coth((gamma + i x) T/2)
// over one sample cell of width delta centred at x0. The antiderivative in
// the integration variable is i*log(sinh((gamma + i x) T/2)), evaluated as a
// single principal log of the edge ratio so no branch tracking is needed (the
// phase change across one cell stays below pi for gamma > 0).
//
// gamma == 0 with the pole inside the cell is the principal-value case; the
// continuous gamma -> 0+ limit leaves a real part of exactly pi, which is the
// on-resonance delta contribution alpha(omega)/2 after normalisation.
cplx kernel_cell_integral(double x0, double gamma, double period_time, double delta) {
  const double T = period_time;
  if (gamma * T > 600.0) return cplx(0.5 * T * delta, 0.0);  // coth -> 1, Beer-Lambert only
  const double x_hi = x0 - 0.5 * delta;  // upper integration edge maps to x0 - delta/2
  const double x_lo = x0 + 0.5 * delta;
  if (gamma == 0.0 && std::abs(x0) <= 0.5 * delta) {
    const double a = std::sin(0.5 * T * x_hi);
    const double b = std::sin(0.5 * T * x_lo);
    const double edge_scale = std::sin(0.25 * T * delta);  // half-cell reference
    if (std::abs(a) < 1e-6 * edge_scale || std::abs(b) < 1e-6 * edge_scale)
      throw std::invalid_argument(
          "susceptibility: gamma = 0 pole on a cell edge; shift the grid or use gamma > 0");
    return cplx(pi, std::log(std::abs(a) / std::abs(b)));
  }
  const cplx s_hi = std::sinh(cplx(0.5 * T * gamma, 0.5 * T * x_hi));
  const cplx s_lo = std::sinh(cplx(0.5 * T * gamma, 0.5 * T * x_lo));
  return cplx(0.0, 1.0) * std::log(s_hi / s_lo);
}

struct PeriodView {
  const CombSpectrum* comb;
  std::size_t j0;
  std::size_t m;
  double step;
};

PeriodView one_period(const CombSpectrum& comb) {
  PeriodView v;
  v.comb = &comb;
  v.m = comb.samples_per_period();
  v.j0 = comb.period_start_index();
  v.step = comb.grid_step();
  return v;
}

// chi on the comb's own one-period lattice, via circular convolution.
std::vector<cplx> chi_on_lattice(const PeriodView& v) {
  const double S = v.comb->spacing();
  const double T = v.comb->period_time();
  const double gamma = v.comb->gamma();
  std::vector<cplx> a(v.m), w(v.m);
  for (std::size_t j = 0; j < v.m; ++j) a[j] = v.comb->alpha()[v.j0 + j];
  for (std::size_t r = 0; r < v.m; ++r) {
    const double x0 = wrap_centered(static_cast<double>(r) * v.step, S);
    w[r] = kernel_cell_integral(x0, gamma, T, v.step);
  }
  auto fa = fft::forward(a);
  auto fw = fft::forward(w);
  for (std::size_t k = 0; k < v.m; ++k) fa[k] *= fw[k];
  auto conv = fft::inverse(fa);
  for (auto& c : conv) c /= two_pi;
  return conv;
}

cplx chi_direct(const PeriodView& v, double omega) {
  const double S = v.comb->spacing();
  const double T = v.comb->period_time();
  const double gamma = v.comb->gamma();
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < v.m; ++j) {
    const double x0 = wrap_centered(omega - v.comb->delta()[v.j0 + j], S);
    acc += v.comb->alpha()[v.j0 + j] * kernel_cell_integral(x0, gamma, T, v.step);
  }
  return acc / two_pi;
}

// Lattice residue of omega on the comb grid, or -1 if not aligned.
long long lattice_residue(const PeriodView& v, double omega) {
  const double pos = (omega - v.comb->delta()[v.j0]) / v.step;
  const double r = std::round(pos);
  if (std::abs(pos - r) > 1e-6) return -1;
  long long idx = static_cast<long long>(r) % static_cast<long long>(v.m);
  if (idx < 0) idx += static_cast<long long>(v.m);
  return idx;
}

}  // namespace

std::vector<cplx> complex_susceptibility(const CombSpectrum& comb, std::span<const double> omega) {
  const PeriodView v = one_period(comb);
  bool aligned = true;
  for (double w : omega) {
    if (lattice_residue(v, w) < 0) {
      aligned = false;
      break;
    }
  }
  std::vector<cplx> out(omega.size());
  if (aligned) {
    const auto lattice = chi_on_lattice(v);
    for (std::size_t i = 0; i < omega.size(); ++i)
      out[i] = lattice[static_cast<std::size_t>(lattice_residue(v, omega[i]))];
  } else {
    for (std::size_t i = 0; i < omega.size(); ++i) out[i] = chi_direct(v, omega[i]);
  }
  return out;
}

cplx complex_susceptibility_at(const CombSpectrum& comb, double omega) {
  return chi_direct(one_period(comb), omega);
}

TransferFunction TransferFunction::analytic(const FourierSeries& series, double gamma,
                                            double length, std::vector<double> omega_grid,
                                            std::optional<int> forced_order) {
  if (gamma < 0) throw std::invalid_argument("transfer function: gamma must be >= 0");
  if (!(length > 0)) throw std::invalid_argument("transfer function: length must be > 0");
  const double T = series.period_time();

  int order = series.order();
  if (forced_order) {
    if (*forced_order < 0) throw std::invalid_argument("transfer function: negative order");
    order = std::min(*forced_order, series.order());
  } else if (order >= 1) {
    // probe the last few coefficients: families with vanishing alternate
    // orders (duty-1/2 squares) would otherwise slip past a single-point check
    double tail = 0;
    for (int n = std::max(1, order - 4); n <= order; ++n)
      tail = std::max(tail, std::abs(series.coeff(n)) * std::exp(-n * gamma * T) * length);
    if (tail >= 1e-6)
      throw std::invalid_argument(
          "transfer function: series truncation tail above 1e-6; raise the series order, "
          "increase gamma, or force an order explicitly");
  }

  TransferFunction tf;
  tf.kind_ = Kind::AnalyticFourier;
  tf.length_ = length;
  tf.period_time_ = T;
  tf.gamma_ = gamma;
  tf.order_ = order;
  tf.coeffs_.resize(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) tf.coeffs_[n] = series.coeff(n);
  tf.grid_ = std::move(omega_grid);
  tf.values_.resize(tf.grid_.size());
  for (std::size_t i = 0; i < tf.grid_.size(); ++i) tf.values_[i] = tf.value_at(tf.grid_[i]);
  return tf;
}

TransferFunction TransferFunction::sampled(const CombSpectrum& comb,
                                           std::vector<double> omega_grid) {
  const PeriodView v = one_period(comb);
  TransferFunction tf;
  tf.kind_ = Kind::SampledSusceptibility;
  tf.length_ = comb.length();
  tf.period_time_ = comb.period_time();
  tf.gamma_ = comb.gamma();
  tf.chi_ = chi_on_lattice(v);
  tf.chi_grid_.resize(v.m);
  for (std::size_t j = 0; j < v.m; ++j) tf.chi_grid_[j] = comb.delta()[v.j0 + j];
  tf.grid_ = std::move(omega_grid);
  tf.values_.resize(tf.grid_.size());
  for (std::size_t i = 0; i < tf.grid_.size(); ++i) tf.values_[i] = tf.value_at(tf.grid_[i]);
  return tf;
}

double TransferFunction::vacuum_delay() const { return length_ / speed_of_light; }

cplx TransferFunction::value_at(double omega) const {
  if (kind_ == Kind::AnalyticFourier) {
    const double T = period_time_;
    cplx decay(0.5 * coeffs_[0].real(), 0.0);
    const cplx z = std::polar(1.0, -omega * T);
    const double damp = std::exp(-gamma_ * T);
    cplx zn{1.0, 0.0};
    double dn = 1.0;
    for (int n = 1; n <= order_; ++n) {
      zn *= z;
      dn *= damp;
      decay += std::conj(coeffs_[n]) * zn * dn;
    }
    return std::exp(-length_ * decay);
  }

  // sampled kind: periodic Catmull-Rom interpolation of chi, exact on lattice
  const std::size_t m = chi_.size();
  const double step = chi_grid_[1] - chi_grid_[0];
  double pos = (omega - chi_grid_[0]) / step;
  pos -= std::floor(pos / static_cast<double>(m)) * static_cast<double>(m);
  auto k = static_cast<std::size_t>(pos);
  if (k >= m) k = m - 1;
  const double t = pos - static_cast<double>(k);
  cplx chi;
  if (t < 1e-9) {
    chi = chi_[k];
  } else {
    const cplx p0 = chi_[(k + m - 1) % m];
    const cplx p1 = chi_[k];
    const cplx p2 = chi_[(k + 1) % m];
    const cplx p3 = chi_[(k + 2) % m];
    chi = p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                         t * (3.0 * (p1 - p2) + p3 - p0)));
  }
  return std::exp(-length_ * chi);
}

IndexProfile refractive_index_profile(const CombSpectrum& comb, double carrier_frequency,
                                      std::span<const double> omega, double n_background) {
  if (!(carrier_frequency > 0))
    throw std::invalid_argument("refractive index: carrier frequency must be > 0");
  const auto chi = complex_susceptibility(comb, omega);
  IndexProfile profile;
  profile.omega.assign(omega.begin(), omega.end());
  profile.n.resize(omega.size());
  profile.n_background = n_background;
  profile.carrier_frequency = carrier_frequency;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double w_abs = carrier_frequency + omega[i];
    if (!(w_abs > 0)) throw std::invalid_argument("refractive index: omega below -carrier");
    profile.n[i] = n_background + speed_of_light / w_abs * chi[i].imag();
  }
  return profile;
}

std::vector<double> group_velocity_from_index(const IndexProfile& profile) {
  const std::size_t n = profile.omega.size();
  if (n < 5) throw std::invalid_argument("group velocity: need at least 5 index samples");
  const double h = profile.omega[1] - profile.omega[0];
  std::vector<double> vg(n);
  auto deriv = [&](std::size_t i) {
    if (i >= 2 && i + 2 < n)
      return (-profile.n[i + 2] + 8.0 * profile.n[i + 1] - 8.0 * profile.n[i - 1] +
              profile.n[i - 2]) /
             (12.0 * h);
    if (i == 0) return (-3.0 * profile.n[0] + 4.0 * profile.n[1] - profile.n[2]) / (2.0 * h);
    if (i == 1) return (profile.n[2] - profile.n[0]) / (2.0 * h);
    if (i + 1 == n)
      return (3.0 * profile.n[n - 1] - 4.0 * profile.n[n - 2] + profile.n[n - 3]) / (2.0 * h);
    return (profile.n[n - 1] - profile.n[n - 3]) / (2.0 * h);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double w_abs = profile.carrier_frequency + profile.omega[i];
    const double denom = profile.n[i] + w_abs * deriv(i);
    if (std::abs(denom) < 1e-12)
      vg[i] = std::copysign(std::numeric_limits<double>::infinity(), denom);
    else
      vg[i] = speed_of_light / denom;
  }
  return vg;
}

GroupVelocityResult group_velocity_fourier(const FourierSeries& series, double gamma) {
  if (gamma < 0) throw std::invalid_argument("group velocity: gamma must be >= 0");
  const double T = series.period_time();
  double sum = 0;
  for (int n = 1; n <= series.order(); ++n)
    sum += static_cast<double>(n) * series.coeff(n).real() * std::exp(-n * gamma * T);
  GroupVelocityResult r;
  r.inverse_velocity = 1.0 / speed_of_light - T * sum;
  r.anomalous = r.inverse_velocity <= 0;
  r.velocity = (r.inverse_velocity == 0)
                   ? std::numeric_limits<double>::infinity()
                   : 1.0 / r.inverse_velocity;
  return r;
}

double group_delay_analytic(const FourierSeries& series, double gamma, double length) {
  if (!(length > 0)) throw std::invalid_argument("group delay: length must be > 0");
  return length * group_velocity_fourier(series, gamma).inverse_velocity;
}

}  // namespace afc
