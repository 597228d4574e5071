#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "tangential/polynomial.hpp"

using namespace tangential;

namespace {

void expect_coeffs(const Polynomial& p, std::vector<Complex> want, double tol = 0.0) {
  ASSERT_EQ(p.degree(), static_cast<int>(want.size()) - 1);
  for (std::size_t n = 0; n < want.size(); ++n) EXPECT_LE(std::abs(p[static_cast<int>(n)] - want[n]), tol) << n;
}

}  // namespace

TEST(Polynomial, Eval) {
  EXPECT_EQ(eval(Polynomial{1.0, 0.0, 1.0}, 2.0), Complex(5.0));
  EXPECT_EQ(eval(Polynomial{}, Complex(3.0, 1.0)), Complex(0.0));
  EXPECT_EQ(eval(Polynomial{0.0, 1.0}, Complex(3.0, 4.0)), Complex(3.0, 4.0));
  EXPECT_EQ(Polynomial({1.0, 0.0, 1.0})(2.0), Complex(5.0));
}

TEST(Polynomial, Normalization) {
  EXPECT_EQ(Polynomial({1.0, 0.0, 0.0}).degree(), 0);
  EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
  EXPECT_EQ(Polynomial({1.0, 1e-300}).degree(), 1);  // near-zero kept
  EXPECT_EQ(Polynomial{}.degree(), -1);
  EXPECT_EQ(Polynomial({2.0})[5], Complex(0.0));
}

TEST(Polynomial, Derivative) {
  expect_coeffs(derivative(Polynomial{0.0, 0.0, 1.0}), {0.0, 2.0});
  EXPECT_TRUE(derivative(Polynomial{5.0}).is_zero());
  expect_coeffs(derivative(Polynomial{1.0, 1.0, 1.0}), {1.0, 2.0});
  expect_coeffs(derivative(Polynomial{1.0, 1.0, 1.0, 1.0}, 2), {2.0, 6.0});
}

TEST(Polynomial, Antiderivative) {
  expect_coeffs(antiderivative(Polynomial{0.0, 0.0, 1.0}), {0.0, 0.0, 0.0, 1.0 / 3.0});
  expect_coeffs(antiderivative(Polynomial{1.0}), {0.0, 1.0});
  expect_coeffs(antiderivative(Polynomial{1.0, 1.0}), {0.0, 1.0, 0.5});
  EXPECT_TRUE(antiderivative(Polynomial{}).is_zero());
}

TEST(Polynomial, IteratedAntiderivative) {
  expect_coeffs(iterated_antiderivative(Polynomial{1.0}, 2), {0.0, 0.0, 0.5});
  Polynomial p{1.0, -2.0, 3.0};
  EXPECT_EQ(iterated_antiderivative(p, 0), p);
  Polynomial q = iterated_antiderivative(Polynomial{0.0, 1.0}, 2);
  expect_coeffs(q, {0.0, 0.0, 0.0, 1.0 / 6.0}, 1e-17);
  // Cross-check against a double integral of t by quadrature.
  auto inner = [](double x) { return Complex(x * x / 2.0); };
  EXPECT_NEAR(oracle::gauss(inner, 0.0, 1.0).real(), eval(q, 1.0).real(), 1e-15);
}

TEST(Polynomial, LinearCombine) {
  EXPECT_TRUE(linear_combine(1.0, Polynomial{1.0, 1.0}, -1.0, Polynomial{1.0, 1.0}).is_zero());
  expect_coeffs(linear_combine(2.0, Polynomial{0.0, 1.0}, 0.0, Polynomial{}), {0.0, 2.0});
  expect_coeffs(linear_combine(1.0, Polynomial{1.0}, 1.0, Polynomial{0.0, 1.0}), {1.0, 1.0});
}

TEST(PolynomialProperties, DerivativeUndoesAntiderivative) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    Polynomial p = oracle::random_polynomial(rng, trial % 40, trial % 2 == 1);
    Polynomial back = derivative(antiderivative(p));
    ASSERT_EQ(back.degree(), p.degree());
    for (int n = 0; n <= p.degree(); ++n) EXPECT_LE(std::abs(back[n] - p[n]), 1e-15 * std::abs(p[n]));
    Polynomial P = antiderivative(p);
    EXPECT_EQ(P.degree(), p.degree() + 1);
    EXPECT_EQ(eval(P, 0.0), Complex(0.0));
  }
}

TEST(PolynomialProperties, IteratedAntiderivativeComposes) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial p = oracle::random_polynomial(rng, trial % 12, true);
    int r = trial % 4, s = (trial / 4) % 3;
    Polynomial a = iterated_antiderivative(p, r + s);
    Polynomial b = iterated_antiderivative(iterated_antiderivative(p, r), s);
    ASSERT_EQ(a.degree(), b.degree());
    for (int n = 0; n <= a.degree(); ++n) EXPECT_LE(std::abs(a[n] - b[n]), 1e-15 * std::abs(a[n]));
  }
}

TEST(PolynomialProperties, HornerMatchesIndependentEvaluation) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p = oracle::random_polynomial(rng, trial, true);
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    Complex z(u(rng), u(rng));
    EXPECT_LE(std::abs(eval(p, z) - oracle::horner(c, z)), 1e-12 * (1.0 + std::abs(oracle::horner(c, z))));
  }
}

TEST(PolynomialProperties, MaximumModulusOnDisks) {
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> ur(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 30;
    Polynomial p = oracle::random_polynomial(rng, d, true);
    const double R = ur(rng);
    const int nb = 64 * (d + 1);
    double boundary = 0.0;
    for (int k = 0; k < nb; ++k) boundary = std::max(boundary, std::abs(eval(p, std::polar(R, 2.0 * M_PI * k / nb))));
    double interior = 0.0;
    for (int a = 0; a < 50; ++a) {
      for (int b = 0; b < 50; ++b) {
        Complex z(-R + 2.0 * R * a / 49.0, -R + 2.0 * R * b / 49.0);
        if (std::abs(z) <= R) interior = std::max(interior, std::abs(eval(p, z)));
      }
    }
    EXPECT_GE(boundary, interior * (1.0 - 1e-3)) << "degree " << d << " radius " << R;
  }
}

TEST(Polynomial, JsonRoundTrip) {
  Polynomial p{Complex(1.0, -0.5), Complex(0.1, 0.0), Complex(0.0, 1.0 / 3.0)};
  nlohmann::json j = to_json(p);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[1][0].get<double>(), 0.1);
  EXPECT_EQ(polynomial_from_json(j), p);
  EXPECT_TRUE(polynomial_from_json(nlohmann::json::array()).is_zero());
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse("[[1]]")), std::exception);
}
