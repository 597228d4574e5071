#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>

#include "tangential/expr.hpp"
#include "tangential/polynomial.hpp"

namespace tangential {

struct PointEval {
  double x;
};

/// Iterated-integral moment over the unit cell [j-1, j]:
///
///   int_{j-1}^{j} int_0^{x_1} ... int_0^{x_{r-1}} phi(t) dt ... dx_1,   r = m - i + 1,
///
/// so i = m is the plain cell integral and i = 1 nests m integrals.
struct Moment {
  int i;
  int j;
  int m;

  int depth() const { return m - i + 1; }
};

class Functional {
 public:
  static Functional point(double x);
  /// Requires 1 <= i <= m.
  static Functional moment(int i, int j, int m);

  bool is_point() const { return std::holds_alternative<PointEval>(data_); }
  bool is_moment() const { return std::holds_alternative<Moment>(data_); }
  const PointEval& as_point() const { return std::get<PointEval>(data_); }
  const Moment& as_moment() const { return std::get<Moment>(data_); }

  std::string describe() const;

 private:
  explicit Functional(std::variant<PointEval, Moment> data) : data_(data) {}
  std::variant<PointEval, Moment> data_;
};

inline constexpr double kMomentTolerance = 1e-12;

/// Exact: point values by Horner, moments as differences of iterated antiderivatives.
Complex apply_to_poly(const Functional& F, const Polynomial& p);

/// F applied to the monomial (z/scale)^n, computed in closed form.
double apply_to_monomial(const Functional& F, int n, double scale = 1.0);

/// Point values by evaluation, moments by quadrature nested depth() times
/// with the tolerance tightened tenfold per level.
Complex apply_to_function(const Functional& F, const Expr& f, double tol = kMomentTolerance);

/// Moment of f = chain.back() when chain[s] is the s-th derivative of a
/// function whose derivatives of order < chain.size()-1 all vanish at 0; the
/// nested integral then telescopes to chain[i-1](j) - chain[i-1](j-1).
Complex apply_to_function_fast(const Functional& F, std::span<const Expr> chain);

/// Nested moment quadrature for an arbitrary integrand.
Complex nested_moment(const std::function<Complex(double)>& f, const Moment& moment, double tol = kMomentTolerance);

/// Adaptive integral of an expression over [a, b], a <= b.
Complex quadrature(const Expr& f, double a, double b, double tol);

}  // namespace tangential
