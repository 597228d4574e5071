#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tangential/expr.hpp"
#include "tangential/polynomial.hpp"
#include "tangential/walsh.hpp"

namespace tangential {

/// Nonincreasing radial minorant of an error envelope, tabulated on radii
/// 0, 0.01, 0.02, ... with value 0.9 * min{eps(t) : |t| <= r}.
///
/// A shift s makes the profile read eps~(r + s). Lookups between grid radii
/// take the value at the next larger grid radius.
class EpsilonProfile {
 public:
  static constexpr double kStep = 0.01;
  static constexpr double kSafety = 0.9;

  /// Table over radius [0, radius]; eps must be real and positive on
  /// [-radius-1, radius+1]. Throws NonPositiveEnvelope otherwise.
  static EpsilonProfile radialize(const Expr& eps, int radius);

  /// Already-radialized table (no safety factor applied).
  static EpsilonProfile from_table(std::vector<double> table);
  static EpsilonProfile constant(double value, int radius);

  double operator()(double r) const;
  EpsilonProfile shifted(int by) const;

  int shift() const { return shift_; }
  /// Largest r that can be looked up.
  double radius() const;
  std::span<const double> table() const { return table_; }
  const std::optional<Expr>& source() const { return source_; }

 private:
  std::vector<double> table_;
  int shift_ = 0;
  std::optional<Expr> source_;
};

class NonPositiveEnvelope : public std::runtime_error {
 public:
  NonPositiveEnvelope(double t, Complex value);
  double t() const { return t_; }

 private:
  double t_;
};

class GlueDiscontinuity : public std::runtime_error {
 public:
  GlueDiscontinuity(int k, double mismatch_left, double mismatch_right);
  double mismatch() const { return mismatch_; }

 private:
  double mismatch_;
};

/// eps~(k) / 2^(k+2).
double budget(const EpsilonProfile& profile, int k);

/// Targets on E_k: prev on the disk of radius k-1, phi on the two new intervals.
SampleSet glue(const Polynomial& prev, const Expr& phi, int k, int degree);

struct Stage {
  int k = 0;
  double budget = 0.0;
  int degree = 0;
  Polynomial g;
  int point_constraints = 0;
  int moment_constraints = 0;
  // Certified sup errors per region of E_k; the disk entries are absent at k = 1.
  std::optional<double> disk_error;
  double left_error = 0.0;
  double right_error = 0.0;
  /// Certified sup of |g_k - g_{k-1}| on the closed disk of radius k-1.
  std::optional<double> step_on_disk;
  double point_residual = 0.0;
  double moment_residual = 0.0;
  /// Largest gap between glued-target and phi moments (should be ~0).
  double glue_moment_gap = 0.0;
};

struct StageOptions {
  /// Derivative chain of the Taylor-reduced target with chain.back() == phi;
  /// enables the closed-form moment path. Empty means nested quadrature.
  std::span<const Expr> chain;
  FitOptions fit;
  double glue_moment_tolerance = 1e-8;
};

struct StageRun {
  Polynomial g;
  std::vector<Stage> stages;
};

/// Builds g_1, ..., g_K: stage 1 fits phi on [-1, 1], stage k >= 2 fits the
/// glued target on E_k, each under budget(profile, k) with point
/// interpolation at the integers of [-k, k] and (for m >= 1) moment matching
/// on the unit cells j = -(k-1)..k (j = 0, 1 at stage 1). Errors are rethrown
/// with the failing stage attached.
StageRun run_stages(const Expr& phi, const EpsilonProfile& profile, int m, int K, int degree_cap,
                    const StageOptions& opts = {});

}  // namespace tangential
