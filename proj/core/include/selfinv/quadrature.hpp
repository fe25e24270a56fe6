#pragma once

#include <functional>

namespace selfinv {

struct QuadResult {
  double value = 0.0;
  double err_bound = 0.0;  // accumulated |S2 - S1| / 15 over accepted panels
  bool converged = false;
};

// Adaptive Simpson on [a, b]. Either endpoint may be infinite; infinite
// ranges are mapped through x = tan(u) before subdivision. Non-finite
// integrand values are treated as 0 so endpoint singularities of integrable
// densities do not poison the panel sums.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol);

}  // namespace selfinv
