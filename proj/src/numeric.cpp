#include "afc/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double xtol) {
  if (!(b > a)) throw std::invalid_argument("golden_section_maximize: requires b > a");
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double wrap_centered(double x, double period) {
  double y = std::fmod(x + 0.5 * period, period);
  if (y < 0) y += period;
  return y - 0.5 * period;
}

}  // namespace afc
