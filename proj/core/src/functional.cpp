#include "tangential/functional.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tangential/quadrature.hpp"

namespace tangential {

Functional Functional::point(double x) { return Functional(PointEval{x}); }

Functional Functional::moment(int i, int j, int m) {
  if (m < 1 || i < 1 || i > m) {
    throw std::invalid_argument("moment T_i^j requires 1 <= i <= m (got i = " + std::to_string(i) +
                                ", m = " + std::to_string(m) + ")");
  }
  return Functional(Moment{i, j, m});
}

std::string Functional::describe() const {
  std::ostringstream os;
  if (is_point()) {
    os << "point(" << as_point().x << ")";
  } else {
    const auto& mo = as_moment();
    os << "moment(i=" << mo.i << ", j=" << mo.j << ", m=" << mo.m << ")";
  }
  return os.str();
}

Complex apply_to_poly(const Functional& F, const Polynomial& p) {
  if (F.is_point()) return eval(p, F.as_point().x);
  const Moment& mo = F.as_moment();
  Polynomial chain = iterated_antiderivative(p, mo.depth());
  return eval(chain, static_cast<double>(mo.j)) - eval(chain, static_cast<double>(mo.j - 1));
}

double apply_to_monomial(const Functional& F, int n, double scale) {
  if (F.is_point()) return std::pow(F.as_point().x / scale, n);
  // Phi_r(z^n) = n!/(n+r)! z^(n+r); the 1/scale^n is folded into each power.
  const Moment& mo = F.as_moment();
  const int r = mo.depth();
  double factor = 1.0;
  for (int s = 1; s <= r; ++s) factor /= static_cast<double>(n + s);
  auto term = [&](double x) { return std::pow(x / scale, n) * std::pow(x, r); };
  return factor * (term(static_cast<double>(mo.j)) - term(static_cast<double>(mo.j - 1)));
}

namespace {

// Phi_level(x) = int_0^x Phi_{level-1}(t) dt, Phi_0 = f.
Complex nested_antiderivative(const std::function<Complex(double)>& f, double x, int level, double tol) {
  if (level == 0) return f(x);
  const double inner_tol = tol / 10.0;
  return integrate([&](double t) { return nested_antiderivative(f, t, level - 1, inner_tol); }, 0.0, x, tol);
}

}  // namespace

Complex nested_moment(const std::function<Complex(double)>& f, const Moment& mo, double tol) {
  const int r = mo.depth();
  const double inner_tol = tol / 10.0;
  return integrate([&](double x) { return nested_antiderivative(f, x, r - 1, inner_tol); },
                   static_cast<double>(mo.j - 1), static_cast<double>(mo.j), tol);
}

Complex apply_to_function(const Functional& F, const Expr& f, double tol) {
  if (F.is_point()) return evaluate(f, F.as_point().x);
  return nested_moment([&](double t) { return evaluate(f, t); }, F.as_moment(), tol);
}

Complex apply_to_function_fast(const Functional& F, std::span<const Expr> chain) {
  if (F.is_point()) return evaluate(chain.back(), F.as_point().x);
  const Moment& mo = F.as_moment();
  if (static_cast<int>(chain.size()) != mo.m + 1) {
    throw std::invalid_argument("fast-path moment needs a derivative chain of length m + 1");
  }
  const Expr& lower = chain[static_cast<std::size_t>(mo.i - 1)];
  return evaluate(lower, static_cast<double>(mo.j)) - evaluate(lower, static_cast<double>(mo.j - 1));
}

Complex quadrature(const Expr& f, double a, double b, double tol) {
  if (a > b) throw std::invalid_argument("quadrature requires a <= b");
  return integrate([&](double t) { return evaluate(f, t); }, a, b, tol);
}

}  // namespace tangential
