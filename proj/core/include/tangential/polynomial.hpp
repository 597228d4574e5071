#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tangential {

using Complex = std::complex<double>;

/// Complex-coefficient polynomial, coefficients in ascending degree.
///
/// Trailing coefficients that are exactly zero are dropped on construction;
/// tiny nonzero ones are kept. The zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  std::span<const Complex> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of z^n, zero past the degree.
  Complex operator[](int n) const;
  Complex operator()(Complex z) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

Complex eval(const Polynomial& p, Complex z);
Polynomial derivative(const Polynomial& p);
Polynomial derivative(const Polynomial& p, int order);

/// The antiderivative vanishing at 0.
Polynomial antiderivative(const Polynomial& p);
Polynomial iterated_antiderivative(const Polynomial& p, int r);

Polynomial linear_combine(Complex a, const Polynomial& p, Complex b, const Polynomial& q);

/// JSON array of [re, im] pairs, ascending degree.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace tangential
