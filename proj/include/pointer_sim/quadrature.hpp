// quadrature.hpp — adaptive Gauss-Kronrod (7,15) integration on a finite interval.
#pragma once

#include <functional>
#include <stdexcept>

namespace psim::quad {

struct Result {
  double value = 0.0;
  double error_bound = 0.0;
  int panels = 0;
};

// Thrown when the panel budget is exhausted before the tolerance is met; carries
// the best estimate achieved and its error bound.
struct ConvergenceError : std::runtime_error {
  double estimate;
  double error_bound;
  ConvergenceError(const std::string& msg, double est, double err)
      : std::runtime_error(msg), estimate(est), error_bound(err) {}
};

// Integrates f over [a, b] until error <= max(rel_tol*|value|, abs_tol). The
// interval is pre-split into initial_panels equal panels (use the integrand's
// oscillation scale), then the worst panel is bisected repeatedly.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int initial_panels = 1,
                 int max_panels = 20000);

}  // namespace psim::quad
