#include "afc/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "afc/units.hpp"

namespace afc {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);  // binary: no platform newline translation
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
  return f;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_number(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || (end && *end != '\0'))
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                             ": malformed number '" + field + "'");
  if (!std::isfinite(v))
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                             ": non-finite value '" + field + "'");
  return v;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

void expect_header(std::ifstream& f, const std::string& expected,
                   const std::filesystem::path& path, std::size_t& line_no) {
  std::string line;
  while (std::getline(f, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    if (strip(line) != expected)
      throw std::runtime_error(path.string() + ": expected header '" + expected + "', got '" +
                               strip(line) + "'");
    return;
  }
  throw std::runtime_error(path.string() + ": empty file");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_spectrum_csv(const std::filesystem::path& path, const CombSpectrum& comb) {
  auto f = open_out(path);
  f << "delta_hz,alpha_per_m\n";
  for (std::size_t j = 0; j < comb.delta().size(); ++j)
    f << format_double(ordinary(comb.delta()[j])) << ',' << format_double(comb.alpha()[j])
      << '\n';
}

LoadedSpectrum load_measured_spectrum(const std::filesystem::path& path, double period_time,
                                      double length, double gamma, Alignment alignment,
                                      bool allow_single_period) {
  if (!(period_time > 0)) throw std::invalid_argument("load spectrum: period_time must be > 0");
  auto f = open_in(path);
  std::size_t line_no = 0;
  expect_header(f, "delta_hz,alpha_per_m", path, line_no);

  std::vector<double> delta, alpha;
  std::string line;
  double prev_hz = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 2 fields, got " + std::to_string(fields.size()));
    const double d = parse_number(fields[0], path, line_no);
    const double a = parse_number(fields[1], path, line_no);
    if (!delta.empty() && d <= prev_hz)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": delta_hz must be strictly increasing");
    prev_hz = d;
    delta.push_back(angular(d));
    alpha.push_back(a);
  }
  if (delta.size() < 2) throw std::runtime_error(path.string() + ": no data rows");

  std::size_t clipped = 0;
  double raw_mean = 0;
  for (double a : alpha) raw_mean += a;
  raw_mean /= static_cast<double>(alpha.size());
  for (double& a : alpha) {
    if (a < 0) {
      a = 0;
      ++clipped;
    }
  }

  const double span = delta.back() - delta.front() + (delta[1] - delta[0]);
  const double spacing = two_pi / period_time;
  if (span < 2.0 * spacing * (1.0 - 1e-6) && !allow_single_period)
    throw std::runtime_error(path.string() +
                             ": spectrum covers less than two periods; pass the "
                             "periodic-extension flag to accept a single period");
  if (span < spacing * (1.0 - 1e-6))
    throw std::runtime_error(path.string() + ": spectrum covers less than one full period");

  CombSpectrum comb(std::move(delta), std::move(alpha), period_time, length, gamma, alignment);
  return LoadedSpectrum{std::move(comb), clipped, raw_mean};
}

void write_waveform_csv(const std::filesystem::path& path, const Waveform& w) {
  auto f = open_out(path);
  f << "t_s,re_omega,im_omega\n";
  for (std::size_t j = 0; j < w.size(); ++j)
    f << format_double(w.time_at(j)) << ',' << format_double(w.samples()[j].real()) << ','
      << format_double(w.samples()[j].imag()) << '\n';
}

Waveform read_waveform_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  std::size_t line_no = 0;
  expect_header(f, "t_s,re_omega,im_omega", path, line_no);
  std::vector<double> t;
  std::vector<std::complex<double>> s;
  std::string line;
  while (std::getline(f, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 3 fields, got " + std::to_string(fields.size()));
    t.push_back(parse_number(fields[0], path, line_no));
    s.emplace_back(parse_number(fields[1], path, line_no), parse_number(fields[2], path, line_no));
  }
  if (t.size() < 2) throw std::runtime_error(path.string() + ": no data rows");
  const double dt = t[1] - t[0];
  if (!(dt > 0)) throw std::runtime_error(path.string() + ": times must be increasing");
  for (std::size_t j = 1; j < t.size(); ++j)
    if (std::abs(t[j] - t[0] - dt * static_cast<double>(j)) > 1e-6 * dt)
      throw std::runtime_error(path.string() + ": time grid is not uniform");
  return Waveform(std::move(s), dt, t[0]);
}

void write_transfer_csv(const std::filesystem::path& path, const TransferFunction& tf) {
  auto f = open_out(path);
  f << "omega_rad_s,re_H,im_H\n";
  for (std::size_t j = 0; j < tf.grid().size(); ++j)
    f << format_double(tf.grid()[j]) << ',' << format_double(tf.values()[j].real()) << ','
      << format_double(tf.values()[j].imag()) << '\n';
}

void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  auto f = open_out(path);
  f << "avg_optical_depth,eta_measured,eta_analytic,tg_measured_s,tg_analytic_s,"
       "transmitted_fraction\n";
  for (const auto& r : rows)
    f << format_double(r.avg_optical_depth) << ',' << format_double(r.eta_measured) << ','
      << format_double(r.eta_analytic) << ',' << format_double(r.tg_measured_s) << ','
      << format_double(r.tg_analytic_s) << ',' << format_double(r.transmitted_fraction) << '\n';
}

}  // namespace afc
