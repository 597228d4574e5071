#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace tangential {

using Complex = std::complex<double>;

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum bisection depth for adaptive integration.
inline constexpr int kQuadratureDepthCap = 40;

/// Adaptive Gauss-Kronrod (G7/K15) integration with absolute tolerance.
///
/// Each panel is accepted when |K15 - G7| <= its share of tol. The share is
/// floored at a few ulps of the panel's L1 mass, since an absolute target
/// below the rounding level of the integrand cannot be met by any rule.
/// b < a integrates with reversed orientation. Throws QuadratureError when a
/// panel still fails its tolerance at the depth cap.
Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol);

}  // namespace tangential
