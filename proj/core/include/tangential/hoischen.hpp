#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tangential/expr.hpp"
#include "tangential/polynomial.hpp"
#include "tangential/stages.hpp"

namespace tangential {

struct CompactWindow {
  double a;
  double b;
  double eps;
};

/// Inputs of a simultaneous approximation run. Without a compact window the
/// run covers [-K, K] with envelope eps(x); with one it covers [a, b] with
/// the constant envelope window->eps.
struct ApproximationSpec {
  Expr f;
  int m = 0;
  Expr eps = Expr::constant(1.0);
  int K = 1;
  int degree_cap = 96;
  std::optional<CompactWindow> compact;
  int grid_per_unit = 100;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct TaylorShift {
  /// chain[i] = f^(i) minus the i-th derivative of the Taylor polynomial;
  /// every entry vanishes at 0.
  std::vector<Expr> chain;
  Polynomial taylor;
};

struct DerivativeReport {
  int order = 0;
  double max_abs_error = 0.0;
  double max_ratio = 0.0;
  double worst_x = 0.0;
};

struct NodeResidual {
  int order;
  int node;
  double residual;
};

struct CellResidual {
  int cell;  // the unit cell [cell-1, cell]
  double residual;
};

struct Certificate {
  std::vector<DerivativeReport> derivatives;
  std::vector<NodeResidual> node_residuals;
  std::vector<CellResidual> moment_residuals;
  double max_node_residual = 0.0;
  double max_moment_residual = 0.0;
  bool ratios_pass = false;
  bool residuals_pass = false;
  bool pass = false;
};

struct Artifact {
  Polynomial g;
  Polynomial taylor;
  std::vector<Stage> stages;
  ApproximationSpec spec;
  Certificate certificate;
};

inline constexpr double kResidualTolerance = 1e-7;

TaylorShift taylor_shift(const Expr& f, int m);

/// Expression for a polynomial, sum of c_n * x^n.
Expr polynomial_expr(const Polynomial& p);

/// eps_i(r) = eps~(r + i).
EpsilonProfile shift_epsilon(const EpsilonProfile& profile, int i);

/// Whole-line pipeline: Taylor-reduce f, run the stages on the reduced m-th
/// derivative against the envelope shifted by m, integrate m times from 0,
/// add the Taylor polynomial back and certify. A failed certificate is
/// reported in the artifact, not thrown.
Artifact approximate(const ApproximationSpec& spec);

/// Single fit of f^(m) on [a, b] followed by m antiderivatives anchored at a.
Artifact approximate_compact(const Expr& f, double a, double b, double eps, int m, int degree_cap);

/// Grid check of |f^(i) - g^(i)| / eps for i = 0..m, plus (whole-line) the
/// integer-node residuals for j = -(K-1)..K and, when m >= 1, the unit-cell
/// integrals of f^(m) - g^(m) on the same cells.
Certificate certify(const Polynomial& g, const ApproximationSpec& spec, int grid_per_unit);

/// Uniform grid of [-K, K] (or [a, b]) with grid_per_unit points per unit,
/// endpoints included.
std::vector<double> certification_grid(const ApproximationSpec& spec, int grid_per_unit);
/// eps(x) in whole-line mode, the window constant in compact mode.
double envelope_at(const ApproximationSpec& spec, double x);
Certificate certify(const Artifact& art, const ApproximationSpec& spec, int grid_per_unit);

nlohmann::json to_json(const Stage& stage);
nlohmann::json to_json(const Certificate& cert);
/// Echo in the spec-file layout (function, m, epsilon, K, degree_cap, mode,
/// grid_per_unit).
nlohmann::json to_json(const ApproximationSpec& spec);
/// { "g", "taylor", "m", "K", "spec", "stages", "certificate" }
nlohmann::json to_json(const Artifact& art);

}  // namespace tangential
