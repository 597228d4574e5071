#include "tangential/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace tangential {

namespace {

// Kronrod 15-point abscissae; odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  Complex kronrod;
  Complex gauss;
  double l1;
};

Panel gk15(const std::function<Complex(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex fc = f(center);
  Complex k = kKronrodWeights[7] * fc;
  Complex g = kGaussWeights[3] * fc;
  double l1 = kKronrodWeights[7] * std::abs(fc);
  for (std::size_t i = 0; i < 7; ++i) {
    double dx = half * kNodes[i];
    Complex f1 = f(center - dx);
    Complex f2 = f(center + dx);
    k += kKronrodWeights[i] * (f1 + f2);
    l1 += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) g += kGaussWeights[i / 2] * (f1 + f2);
  }
  return {k * half, g * half, l1 * std::abs(half)};
}

Complex adapt(const std::function<Complex(double)>& f, double a, double b, double tol, int depth) {
  Panel p = gk15(f, a, b);
  double err = std::abs(p.kronrod - p.gauss);
  double floor = 50.0 * std::numeric_limits<double>::epsilon() * p.l1;
  if (err <= std::max(tol, floor)) return p.kronrod;
  if (depth >= kQuadratureDepthCap) {
    std::ostringstream os;
    os.precision(17);
    os << "quadrature did not reach tolerance " << tol << " on [" << a << ", " << b << "] (error estimate " << err
       << ") within depth cap " << kQuadratureDepthCap;
    throw QuadratureError(os.str());
  }
  double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (a == b) return {0.0, 0.0};
  if (b < a) return -integrate(f, b, a, tol);
  return adapt(f, a, b, tol, 0);
}

}  // namespace tangential
