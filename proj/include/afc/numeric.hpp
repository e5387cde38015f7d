#pragma once

#include <functional>

namespace afc {

// Golden-section search for the maximum of a unimodal function on [a, b].
// Returns the abscissa of the maximum to within xtol.
double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double xtol = 1e-10);

// Wrap x into [-period/2, period/2).
double wrap_centered(double x, double period);

}  // namespace afc
