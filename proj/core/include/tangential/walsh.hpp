#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tangential/functional.hpp"
#include "tangential/polynomial.hpp"

namespace tangential {

enum class Region { DiskBoundary, DiskInterior, Interval };

struct Sample {
  Complex z;
  Region region;
  Complex target;
};

struct Interval {
  double lo;
  double hi;
};

/// Closed disk |z| <= disk_radius (absent when the radius is 0) together
/// with a list of real intervals.
struct Geometry {
  double disk_radius = 0.0;
  std::vector<Interval> intervals;

  double extent() const;
};

/// Where sample targets come from. Certification re-evaluates these at the
/// refined points instead of interpolating stored values.
struct TargetSources {
  std::function<Complex(Complex)> disk;
  std::function<Complex(double)> interval;
};

struct SampleSet {
  std::vector<Sample> points;
  Geometry geometry;
  TargetSources sources;
  int degree = 0;  // degree the density was chosen for

  /// False for hand-built point lists with no geometry to resample.
  bool regenerable() const { return static_cast<bool>(sources.interval); }
};

/// Points per disk circle or interval for a fit of the given degree.
int samples_per_region(int degree);

/// The set E_k: disk of radius k-1 plus [-k, -(k-1)] and [k-1, k]; for k = 1
/// the disk is empty and the two intervals merge into [-1, 1].
Geometry stage_geometry(int k);

/// Equispaced angles on the disk boundary and Chebyshev extreme points on each
/// interval; density multiplies the per-region count (refinement keeps the
/// coarse points as a subset).
SampleSet sample_geometry(const Geometry& geometry, int degree, const TargetSources& sources, int density = 1);

SampleSet sample_set_for(int k, int degree, const TargetSources& sources);

/// Hand-built sample list; certification evaluates it as given.
SampleSet explicit_samples(std::vector<Sample> points);

struct Constraint {
  Functional functional;
  Complex value;
};
using ConstraintSystem = std::vector<Constraint>;

struct FitOptions {
  int lawson_rounds = 8;
  double weight_floor = 1e-12;
  int degree_step = 4;
  double acceptance = 0.9;  // accept when certified error <= acceptance * budget
  int refine = 4;
  double constraint_tolerance = 1e-9;
  // After the first acceptable degree, keep escalating while each step cuts
  // the certified error by at least this factor; <= 1 stops at the first.
  double polish_gain = 4.0;
};

struct FitResult {
  Polynomial p;
  int degree = 0;
  double certified_error = 0.0;
  double sample_error = 0.0;
  double constraint_residual = 0.0;  // max |F(p) - v| / (1 + |v|)
};

class InfeasibleBudget : public std::runtime_error {
 public:
  InfeasibleBudget(double best_error, double budget, int degree_cap, int stage = 0);
  double best_error() const { return best_error_; }
  double budget() const { return budget_; }
  int degree_cap() const { return degree_cap_; }
  int stage() const { return stage_; }

 private:
  double best_error_;
  double budget_;
  int degree_cap_;
  int stage_;
};

class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constrained near-minimax fit at one fixed degree.
///
/// Constraints are eliminated exactly (particular solution plus orthonormal
/// null-space basis of the constraint matrix), then the sample error is
/// driven toward minimax by Lawson reweighting of least-squares solves over
/// the null space. The best iterate by sample max error is kept.
FitResult fit_at_degree(const SampleSet& s, const ConstraintSystem& c, int degree, const FitOptions& opts = {});

/// Escalates the degree from the constraint count in steps of four up to
/// degree_cap until the certified error is within opts.acceptance * budget,
/// then keeps going while the error still drops by opts.polish_gain per step
/// and returns the best fit seen. Throws InfeasibleBudget with the best
/// certified error when no degree qualifies.
FitResult fit_constrained(const SampleSet& s, const ConstraintSystem& c, double budget, int degree_cap,
                          const FitOptions& opts = {});

/// max |p(z) - target(z)| over the sample set refined refine-fold, with
/// targets re-evaluated from the sources.
double certify_sup_error(const Polynomial& p, const SampleSet& s, int refine);

double constraint_residual(const Polynomial& p, const ConstraintSystem& c);

/// Uniform (radius x angle) grid of the closed disk, for probing interiors.
std::vector<Complex> disk_grid(double radius, int radial, int angular);

}  // namespace tangential
