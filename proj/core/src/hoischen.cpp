#include "tangential/hoischen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tangential/functional.hpp"
#include "tangential/quadrature.hpp"
#include "tangential/walsh.hpp"

namespace tangential {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Antiderivative of p taking the value `value` at `anchor`.
Polynomial anchored_antiderivative(const Polynomial& p, double anchor, Complex value) {
  Polynomial P = antiderivative(p);
  return linear_combine(1.0, P, 1.0, Polynomial{value - eval(P, anchor)});
}

}  // namespace

void ApproximationSpec::validate() const {
  if (m < 0 || m > 8) throw std::invalid_argument("m must be in 0..8 (got " + std::to_string(m) + ")");
  if (degree_cap < 0 || degree_cap > 128) {
    throw std::invalid_argument("degree_cap must be in 0..128 (got " + std::to_string(degree_cap) + ")");
  }
  if (grid_per_unit < 50) {
    throw std::invalid_argument("grid_per_unit must be >= 50 (got " + std::to_string(grid_per_unit) + ")");
  }
  if (contains_abs(f)) throw std::invalid_argument("f may not use abs (it must be differentiable m times)");
  if (compact) {
    if (!std::isfinite(compact->a) || !std::isfinite(compact->b) || !(compact->a < compact->b)) {
      throw std::invalid_argument("compact window requires finite a < b");
    }
    if (!(compact->eps > 0.0)) throw std::invalid_argument("compact window requires eps > 0");
  } else if (K < 1 || K > 8) {
    throw std::invalid_argument("K must be in 1..8 (got " + std::to_string(K) + ")");
  }
}

Expr polynomial_expr(const Polynomial& p) {
  Expr out = Expr::constant(0.0);
  const Expr x = Expr::variable();
  for (int n = 0; n <= p.degree(); ++n) {
    if (p[n] == Complex(0.0, 0.0)) continue;
    out = out + Expr::constant(p[n]) * pow(x, n);
  }
  return out;
}

TaylorShift taylor_shift(const Expr& f, int m) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  std::vector<Expr> derivs = derivatives(f, m);
  std::vector<Complex> coeffs;
  for (int i = 0; i <= m; ++i) coeffs.push_back(evaluate(derivs[static_cast<std::size_t>(i)], 0.0) / factorial(i));

  TaylorShift out;
  out.taylor = Polynomial(std::move(coeffs));
  for (int i = 0; i <= m; ++i) {
    const Expr& fi = derivs[static_cast<std::size_t>(i)];
    Expr reduced = fi - polynomial_expr(derivative(out.taylor, i));
    Complex at_zero = evaluate(reduced, 0.0);
    if (std::abs(at_zero) > 1e-12 * (1.0 + std::abs(evaluate(fi, 0.0)))) {
      std::ostringstream os;
      os << "Taylor reduction left derivative " << i << " at " << std::abs(at_zero) << " at the origin";
      throw std::runtime_error(os.str());
    }
    out.chain.push_back(std::move(reduced));
  }
  return out;
}

EpsilonProfile shift_epsilon(const EpsilonProfile& profile, int i) { return profile.shifted(i); }

Artifact approximate(const ApproximationSpec& spec) {
  spec.validate();
  if (spec.compact) {
    return approximate_compact(spec.f, spec.compact->a, spec.compact->b, spec.compact->eps, spec.m,
                               spec.degree_cap);
  }

  TaylorShift shifted = taylor_shift(spec.f, spec.m);
  EpsilonProfile profile = EpsilonProfile::radialize(spec.eps, spec.K + spec.m);
  EpsilonProfile stage_profile = shift_epsilon(profile, spec.m);

  StageOptions opts;
  opts.chain = shifted.chain;
  StageRun run = run_stages(shifted.chain.back(), stage_profile, spec.m, spec.K, spec.degree_cap, opts);

  Artifact art;
  art.taylor = shifted.taylor;
  art.g = linear_combine(1.0, iterated_antiderivative(run.g, spec.m), 1.0, shifted.taylor);
  art.stages = std::move(run.stages);
  art.spec = spec;
  art.certificate = certify(art.g, spec, spec.grid_per_unit);
  return art;
}

Artifact approximate_compact(const Expr& f, double a, double b, double eps, int m, int degree_cap) {
  ApproximationSpec spec;
  spec.f = f;
  spec.m = m;
  spec.eps = Expr::constant(eps);
  spec.K = 0;
  spec.degree_cap = degree_cap;
  spec.compact = CompactWindow{a, b, eps};
  spec.validate();

  std::vector<Expr> derivs = derivatives(f, m);
  const Expr& top = derivs.back();

  // |error of order m - s| <= (b-a)^s / s! * budget after s anchored integrations.
  double spread = 0.0;
  for (int s = 0; s <= m; ++s) spread += std::pow(b - a, s) / factorial(s);
  const double fit_budget = eps / spread;

  Geometry geometry;
  geometry.intervals = {{a, b}};
  TargetSources sources;
  sources.interval = [top](double x) { return evaluate(top, x); };
  SampleSet samples = sample_geometry(geometry, degree_cap, sources);
  ConstraintSystem cs{{Functional::point(a), evaluate(top, a)}};

  FitResult fit = fit_constrained(samples, cs, fit_budget, degree_cap);

  Polynomial g = fit.p;
  Polynomial taylor;
  for (int i = m - 1; i >= 0; --i) {
    Complex anchor_value = evaluate(derivs[static_cast<std::size_t>(i)], a);
    g = anchored_antiderivative(g, a, anchor_value);
    taylor = anchored_antiderivative(taylor, a, anchor_value);
  }

  Stage st;
  st.k = 1;
  st.budget = fit_budget;
  st.degree = fit.degree;
  st.g = fit.p;
  st.point_constraints = 1;
  st.left_error = fit.certified_error;
  st.right_error = fit.certified_error;
  st.point_residual = fit.constraint_residual;

  Artifact art;
  art.g = std::move(g);
  art.taylor = std::move(taylor);
  art.stages.push_back(std::move(st));
  art.spec = spec;
  art.certificate = certify(art.g, spec, spec.grid_per_unit);
  return art;
}

std::vector<double> certification_grid(const ApproximationSpec& spec, int grid_per_unit) {
  if (grid_per_unit < 1) throw std::invalid_argument("grid_per_unit must be positive");
  const double lo = spec.compact ? spec.compact->a : -static_cast<double>(spec.K);
  const double hi = spec.compact ? spec.compact->b : static_cast<double>(spec.K);
  const auto cells = std::max(1L, static_cast<long>(std::ceil((hi - lo) * grid_per_unit - 1e-9)));
  std::vector<double> xs(static_cast<std::size_t>(cells) + 1);
  for (long n = 0; n <= cells; ++n) {
    xs[static_cast<std::size_t>(n)] =
        n == cells ? hi : lo + (hi - lo) * static_cast<double>(n) / static_cast<double>(cells);
  }
  return xs;
}

double envelope_at(const ApproximationSpec& spec, double x) {
  return spec.compact ? spec.compact->eps : evaluate(spec.eps, x).real();
}

Certificate certify(const Artifact& art, const ApproximationSpec& spec, int grid_per_unit) {
  return certify(art.g, spec, grid_per_unit);
}

Certificate certify(const Polynomial& g, const ApproximationSpec& spec, int grid_per_unit) {
  if (grid_per_unit < 50) throw std::invalid_argument("grid_per_unit must be >= 50");
  const int m = spec.m;
  std::vector<Expr> derivs = derivatives(spec.f, m);
  std::vector<Polynomial> gd;
  for (int i = 0; i <= m; ++i) gd.push_back(derivative(g, i));

  const std::vector<double> xs = certification_grid(spec, grid_per_unit);
  std::vector<double> envelope;
  envelope.reserve(xs.size());
  for (double x : xs) envelope.push_back(envelope_at(spec, x));

  Certificate cert;
  cert.ratios_pass = true;
  for (int i = 0; i <= m; ++i) {
    DerivativeReport rep;
    rep.order = i;
    rep.worst_x = xs.front();
    for (std::size_t n = 0; n < xs.size(); ++n) {
      double err = std::abs(evaluate(derivs[static_cast<std::size_t>(i)], xs[n]) -
                            eval(gd[static_cast<std::size_t>(i)], xs[n]));
      double ratio = err / envelope[n];
      rep.max_abs_error = std::max(rep.max_abs_error, err);
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst_x = xs[n];
      }
    }
    if (!(rep.max_ratio < 1.0)) cert.ratios_pass = false;
    cert.derivatives.push_back(rep);
  }

  if (!spec.compact) {
    for (int i = 0; i <= m; ++i) {
      for (int j = -(spec.K - 1); j <= spec.K; ++j) {
        double r = std::abs(eval(gd[static_cast<std::size_t>(i)], j) - evaluate(derivs[static_cast<std::size_t>(i)], j));
        cert.node_residuals.push_back({i, j, r});
        cert.max_node_residual = std::max(cert.max_node_residual, r);
      }
    }
    if (m >= 1) {
      const Expr& top = derivs.back();
      const Polynomial& gtop = gd.back();
      for (int j = -(spec.K - 1); j <= spec.K; ++j) {
        Complex cell = integrate([&](double t) { return evaluate(top, t) - eval(gtop, t); }, j - 1.0, j,
                                 kMomentTolerance);
        cert.moment_residuals.push_back({j, std::abs(cell)});
        cert.max_moment_residual = std::max(cert.max_moment_residual, std::abs(cell));
      }
    }
  }
  cert.residuals_pass = cert.max_node_residual <= kResidualTolerance && cert.max_moment_residual <= kResidualTolerance;
  cert.pass = cert.ratios_pass && cert.residuals_pass;
  return cert;
}

}  // namespace tangential
