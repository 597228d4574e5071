#include "tangential/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tangential {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

Complex Polynomial::operator[](int n) const {
  if (n < 0 || n > degree()) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(n)];
}

Complex Polynomial::operator()(Complex z) const { return eval(*this, z); }

Complex eval(const Polynomial& p, Complex z) {
  auto c = p.coeffs();
  Complex acc(0.0, 0.0);
  if (z.imag() == 0.0) {
    // Real argument: two real Horner recurrences, no complex products.
    double x = z.real();
    double re = 0.0;
    double im = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      re = re * x + it->real();
      im = im * x + it->imag();
    }
    return {re, im};
  }
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial derivative(const Polynomial& p) {
  auto c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Complex> out(c.size() - 1);
  for (std::size_t n = 1; n < c.size(); ++n) out[n - 1] = static_cast<double>(n) * c[n];
  return Polynomial(std::move(out));
}

Polynomial derivative(const Polynomial& p, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  Polynomial out = p;
  for (int i = 0; i < order; ++i) out = derivative(out);
  return out;
}

Polynomial antiderivative(const Polynomial& p) {
  auto c = p.coeffs();
  if (c.empty()) return {};
  std::vector<Complex> out(c.size() + 1, Complex(0.0, 0.0));
  for (std::size_t n = 0; n < c.size(); ++n) out[n + 1] = c[n] / static_cast<double>(n + 1);
  return Polynomial(std::move(out));
}

Polynomial iterated_antiderivative(const Polynomial& p, int r) {
  if (r < 0) throw std::invalid_argument("antiderivative order must be nonnegative");
  Polynomial out = p;
  for (int i = 0; i < r; ++i) out = antiderivative(out);
  return out;
}

Polynomial linear_combine(Complex a, const Polynomial& p, Complex b, const Polynomial& q) {
  std::size_t n = static_cast<std::size_t>(std::max(p.degree(), q.degree()) + 1);
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    int k = static_cast<int>(i);
    out[i] = a * p[k] + b * q[k];
  }
  return Polynomial(std::move(out));
}

nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Complex& c : p.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of [re, im] pairs");
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw std::invalid_argument("polynomial coefficient must be a [re, im] pair");
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace tangential
