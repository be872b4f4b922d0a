#pragma once

namespace hermheat {

// Gamma function for x > 0, relative error <= 1e-12.
double gamma_fn(double x);

}  // namespace hermheat
