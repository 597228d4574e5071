#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Dense>

namespace oracle {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

Complex gauss_panel(const std::function<Complex(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  double re = Rule::integrate([&](double t) { return f(t).real(); }, a, b);
  double im = Rule::integrate([&](double t) { return f(t).imag(); }, a, b);
  return {re, im};
}

// Phi_r(f)(x) = int_0^x Phi_{r-1}(f).
Complex phi(const std::function<Complex(double)>& f, int r, double x) {
  if (r == 0) return f(x);
  return gauss_panel([&](double t) { return phi(f, r - 1, t); }, 0.0, x);
}

}  // namespace

Complex gauss(const std::function<Complex(double)>& f, double a, double b, int panels) {
  Complex total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + (b - a) * p / panels;
    double hi = a + (b - a) * (p + 1) / panels;
    total += gauss_panel(f, lo, hi);
  }
  return total;
}

Complex nested_moment(const std::function<Complex(double)>& f, int i, int j, int m) {
  const int r = m - i + 1;
  return gauss_panel([&](double x) { return phi(f, r - 1, x); }, j - 1.0, static_cast<double>(j));
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double brute_force_minimax(const std::vector<double>& xs, const std::vector<double>& targets,
                           const std::vector<double>& constraint_x, const std::vector<double>& constraint_v,
                           int degree) {
  const int nc = static_cast<int>(constraint_x.size());
  const int nfree = degree + 1 - nc;
  const auto npts = static_cast<Eigen::Index>(xs.size());

  // Constrained coefficients are the low ones: solve C_low a_low = v - C_high a_high.
  Eigen::MatrixXd C_low(nc, nc), C_high(nc, nfree);
  for (int r = 0; r < nc; ++r) {
    for (int n = 0; n <= degree; ++n) {
      double v = std::pow(constraint_x[static_cast<std::size_t>(r)], n);
      if (n < nc) C_low(r, n) = v; else C_high(r, n - nc) = v;
    }
  }
  Eigen::VectorXd cv(nc);
  for (int r = 0; r < nc; ++r) cv(r) = constraint_v[static_cast<std::size_t>(r)];
  auto lu = C_low.fullPivLu();

  auto coefficients = [&](const Eigen::VectorXd& free) {
    Eigen::VectorXd a(degree + 1);
    if (nc > 0) a.head(nc) = lu.solve(cv - C_high * free);
    a.tail(nfree) = free;
    return a;
  };
  auto max_error = [&](const Eigen::VectorXd& free) {
    Eigen::VectorXd a = coefficients(free);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < npts; ++k) {
      double x = xs[static_cast<std::size_t>(k)];
      double v = 0.0;
      for (int n = degree; n >= 0; --n) v = v * x + a(n);
      worst = std::max(worst, std::abs(v - targets[static_cast<std::size_t>(k)]));
    }
    return worst;
  };

  if (nfree == 0) return max_error(Eigen::VectorXd(0));

  // Least-squares start for the box.
  Eigen::MatrixXd A(npts, nfree);
  Eigen::VectorXd b(npts);
  for (Eigen::Index k = 0; k < npts; ++k) {
    double x = xs[static_cast<std::size_t>(k)];
    Eigen::VectorXd low(nc);
    for (int n = 0; n < nc; ++n) low(n) = std::pow(x, n);
    // p(x) = low . C_low^{-1} (v - C_high f) + high . f
    Eigen::VectorXd g = nc > 0 ? Eigen::VectorXd(lu.solve(C_high).transpose() * low) : Eigen::VectorXd::Zero(nfree);
    for (int n = 0; n < nfree; ++n) A(k, n) = std::pow(x, n + nc) - g(n);
    b(k) = targets[static_cast<std::size_t>(k)] - (nc > 0 ? low.dot(lu.solve(cv)) : 0.0);
  }
  Eigen::VectorXd center = A.colPivHouseholderQr().solve(b);
  Eigen::VectorXd half(nfree);
  for (int n = 0; n < nfree; ++n) half(n) = std::max(1.0, 10.0 * std::abs(center(n)));

  const int per_dim = nfree <= 3 ? 21 : 11;
  double best = max_error(center);
  Eigen::VectorXd best_free = center;
  for (int level = 0; level < 120 && half.maxCoeff() > 1e-4; ++level) {
    std::vector<int> idx(static_cast<std::size_t>(nfree), 0);
    Eigen::VectorXd level_best = best_free;
    for (;;) {
      Eigen::VectorXd trial(nfree);
      for (int n = 0; n < nfree; ++n) {
        trial(n) = center(n) + half(n) * (2.0 * idx[static_cast<std::size_t>(n)] / (per_dim - 1) - 1.0);
      }
      double e = max_error(trial);
      if (e < best) {
        best = e;
        level_best = trial;
      }
      int n = 0;
      while (n < nfree && ++idx[static_cast<std::size_t>(n)] == per_dim) idx[static_cast<std::size_t>(n++)] = 0;
      if (n == nfree) break;
    }
    best_free = level_best;
    center = best_free;
    half *= 0.7;
  }
  return best;
}

std::vector<double> chebyshev_interpolant(const std::function<double(double)>& f, int degree) {
  const int n = degree + 1;
  std::vector<double> nodes(static_cast<std::size_t>(n)), values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    nodes[static_cast<std::size_t>(k)] = std::cos(M_PI * (k + 0.5) / n);
    values[static_cast<std::size_t>(k)] = f(nodes[static_cast<std::size_t>(k)]);
  }
  // Chebyshev coefficients, then T_n expanded into monomials by the recurrence.
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  std::vector<double> t_prev{1.0}, t_cur{0.0, 1.0};
  for (int d = 0; d < n; ++d) {
    double c = 0.0;
    for (int k = 0; k < n; ++k) c += values[static_cast<std::size_t>(k)] * std::cos(M_PI * d * (k + 0.5) / n);
    c *= (d == 0 ? 1.0 : 2.0) / n;
    const std::vector<double>& t = d == 0 ? t_prev : t_cur;
    for (std::size_t q = 0; q < t.size(); ++q) out[q] += c * t[q];
    if (d >= 1) {
      std::vector<double> next(t_cur.size() + 1, 0.0);
      for (std::size_t q = 0; q < t_cur.size(); ++q) next[q + 1] += 2.0 * t_cur[q];
      for (std::size_t q = 0; q < t_prev.size(); ++q) next[q] -= t_prev[q];
      t_prev = std::move(t_cur);
      t_cur = std::move(next);
    }
  }
  return out;
}

std::string random_expression(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 10);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  auto sub = [&] { return random_expression(rng, depth - 1); };
  auto literal = [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", coef(rng));
    return std::string(buf[0] == '-' ? "(" : "") + buf + (buf[0] == '-' ? ")" : "");
  };
  switch (pick(rng)) {
    case 0: return "x";
    case 1: return literal();
    case 2: return "(" + sub() + " + " + sub() + ")";
    case 3: return "(" + sub() + " - " + sub() + ")";
    case 4: return "(" + sub() + " * " + sub() + ")";
    case 5: return "sin(" + sub() + ")";
    case 6: return "cos(" + sub() + ")";
    case 7: return "exp(sin(" + sub() + "))";
    case 8: return "log(2 + (" + sub() + ")^2)";
    case 9: return "(" + sub() + ") / (1 + (" + sub() + ")^2)";
    default: {
      std::uniform_int_distribution<int> e(2, 3);
      return "(" + sub() + ")^" + std::to_string(e(rng)) + " - sqrt(1 + x^2)";
    }
  }
}

Polynomial random_polynomial(std::mt19937& rng, int degree, bool complex_coeffs) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = Complex(u(rng), complex_coeffs ? u(rng) : 0.0);
  if (std::abs(c.back()) < 0.25) c.back() += 0.5;
  return Polynomial(std::move(c));
}

}  // namespace oracle
