#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tangential/walsh.hpp"

using namespace tangential;

namespace {

TargetSources sources_for(std::function<Complex(Complex)> f) {
  TargetSources s;
  s.disk = f;
  s.interval = [f](double x) { return f(Complex(x, 0.0)); };
  return s;
}

TargetSources sin_sources() {
  return sources_for([](Complex z) { return std::sin(z); });
}

int count_region(const SampleSet& s, Region r, double lo = -1e9, double hi = 1e9) {
  int n = 0;
  for (const auto& p : s.points) n += p.region == r && p.z.real() >= lo && p.z.real() <= hi;
  return n;
}

}  // namespace

TEST(SampleSet, StageOneHasNoDisk) {
  SampleSet s = sample_set_for(1, 8, sin_sources());
  EXPECT_EQ(s.geometry.disk_radius, 0.0);
  EXPECT_EQ(count_region(s, Region::DiskBoundary), 0);
  EXPECT_GE(count_region(s, Region::Interval, -1.0, 1.0), 72);
  EXPECT_EQ(static_cast<int>(s.points.size()), count_region(s, Region::Interval, -1.0, 1.0));
}

TEST(SampleSet, StageTwoCounts) {
  SampleSet s = sample_set_for(2, 8, sin_sources());
  EXPECT_EQ(count_region(s, Region::DiskBoundary), 72);
  EXPECT_EQ(count_region(s, Region::Interval, -2.0, -1.0), 72);
  EXPECT_EQ(count_region(s, Region::Interval, 1.0, 2.0), 72);
  for (const auto& p : s.points) {
    if (p.region == Region::DiskBoundary) EXPECT_NEAR(std::abs(p.z), 1.0, 1e-14);
    if (p.region == Region::Interval) EXPECT_EQ(p.z.imag(), 0.0);
    EXPECT_EQ(p.target, std::sin(p.z));
  }
  EXPECT_GE(s.points.size(), 4u * 9u);
}

TEST(SampleSet, StageThreeGeometry) {
  Geometry g = stage_geometry(3);
  EXPECT_EQ(g.disk_radius, 2.0);
  ASSERT_EQ(g.intervals.size(), 2u);
  EXPECT_EQ(g.intervals[0].lo, -3.0);
  EXPECT_EQ(g.intervals[0].hi, -2.0);
  EXPECT_EQ(g.intervals[1].lo, 2.0);
  EXPECT_EQ(g.intervals[1].hi, 3.0);
  EXPECT_EQ(g.extent(), 3.0);
  EXPECT_THROW(stage_geometry(0), std::invalid_argument);
}

TEST(SampleSet, DensityScalesAndNests) {
  SampleSet coarse = sample_set_for(2, 10, sin_sources());
  SampleSet fine = sample_geometry(coarse.geometry, 10, coarse.sources, 4);
  EXPECT_EQ(count_region(fine, Region::DiskBoundary), 4 * count_region(coarse, Region::DiskBoundary));
  for (const auto& p : coarse.points) {
    bool found = false;
    for (const auto& q : fine.points) found = found || std::abs(p.z - q.z) < 1e-14;
    EXPECT_TRUE(found) << p.z;
  }
}

TEST(FitConstrained, ConstantReproduction) {
  TargetSources one = sources_for([](Complex) { return Complex(1.0); });
  SampleSet s = sample_set_for(1, 8, one);
  ConstraintSystem c{{Functional::point(0.0), 1.0}};
  FitResult fit = fit_constrained(s, c, 1e-6, 16);
  EXPECT_LE(fit.certified_error, 1e-15);
  EXPECT_LE(std::abs(fit.p[0] - 1.0), 1e-15);
  for (int n = 1; n <= fit.p.degree(); ++n) EXPECT_LE(std::abs(fit.p[n]), 1e-14);
}

TEST(FitConstrained, SinWithInterpolation) {
  SampleSet s = sample_set_for(1, 32, sin_sources());
  ConstraintSystem c;
  for (int j = -1; j <= 1; ++j) c.push_back({Functional::point(j), std::sin(static_cast<double>(j))});
  FitResult fit = fit_constrained(s, c, 1e-3, 32);
  for (int j = -1; j <= 1; ++j) EXPECT_LE(std::abs(eval(fit.p, j) - std::sin(static_cast<double>(j))), 1e-9);
  EXPECT_LE(fit.certified_error, 1e-3);
  // Feasibility oracle: the unconstrained degree-9 Chebyshev interpolant.
  std::vector<double> cheb = oracle::chebyshev_interpolant([](double x) { return std::sin(x); }, 9);
  double cheb_err = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    double x = -1.0 + k / 1000.0;
    cheb_err = std::max(cheb_err, std::abs(oracle::horner({cheb.begin(), cheb.end()}, x).real() - std::sin(x)));
  }
  EXPECT_LT(cheb_err, 1e-7);
  double grid_err = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    double x = -1.0 + k / 1000.0;
    grid_err = std::max(grid_err, std::abs(eval(fit.p, x) - std::sin(x)));
  }
  EXPECT_LE(grid_err, 1e-3);
}

TEST(FitConstrained, InfeasibleReportsBestError) {
  // Oracle: the best line on [-1, 1] misses sin by about 0.039.
  std::vector<double> xs, ts;
  for (int k = 0; k <= 40; ++k) {
    xs.push_back(-1.0 + k / 20.0);
    ts.push_back(std::sin(xs.back()));
  }
  const double line_floor = oracle::brute_force_minimax(xs, ts, {}, {}, 1);
  EXPECT_NEAR(line_floor, 0.039, 1e-3);

  SampleSet s = sample_set_for(1, 1, sin_sources());
  try {
    fit_constrained(s, {}, 1e-6, 1);
    FAIL() << "expected InfeasibleBudget";
  } catch (const InfeasibleBudget& e) {
    EXPECT_GE(e.best_error(), line_floor * (1.0 - 1e-3));
    EXPECT_LE(e.best_error(), 1.5 * line_floor);
    EXPECT_EQ(e.degree_cap(), 1);
    EXPECT_EQ(e.budget(), 1e-6);
  }
}

TEST(FitConstrained, Preconditions) {
  SampleSet s = sample_set_for(1, 4, sin_sources());
  EXPECT_THROW(fit_constrained(s, {}, 0.0, 4), std::invalid_argument);
  ConstraintSystem many;
  for (int j = 0; j < 4; ++j) many.push_back({Functional::point(0.1 * j), 0.0});
  EXPECT_THROW(fit_constrained(s, many, 1.0, 2), std::invalid_argument);
}

TEST(FitConstrained, RankDeficientConstraints) {
  SampleSet s = sample_set_for(1, 8, sin_sources());
  ConstraintSystem dup{{Functional::point(0.5), std::sin(0.5)}, {Functional::point(0.5), std::sin(0.5)}};
  EXPECT_THROW(fit_at_degree(s, dup, 6), RankDeficient);
  // More constraints than coefficients is a precondition failure, not rank.
  ConstraintSystem zero{{Functional::point(0.0), 1.0}, {Functional::point(1.0), 2.0}};
  EXPECT_THROW(fit_at_degree(s, zero, 0), std::invalid_argument);
}

TEST(CertifySupError, Examples) {
  SampleSet s = sample_set_for(1, 9, sin_sources());
  // p = own sampled values: exact polynomial target.
  Polynomial p{0.5, -1.0, 0.25};
  SampleSet own = sample_set_for(2, 9, sources_for([p](Complex z) { return eval(p, z); }));
  EXPECT_LE(certify_sup_error(p, own, 4), 1e-15);
  TargetSources one = sources_for([](Complex) { return Complex(1.0); });
  EXPECT_EQ(certify_sup_error(Polynomial{0.0}, sample_set_for(1, 4, one), 4), 1.0);
  std::vector<double> cheb = oracle::chebyshev_interpolant([](double x) { return std::sin(x); }, 9);
  Polynomial c(std::vector<Complex>(cheb.begin(), cheb.end()));
  EXPECT_LE(certify_sup_error(c, s, 4), 1e-6);
  EXPECT_THROW(certify_sup_error(c, s, 1), std::invalid_argument);
}

TEST(FitProperties, ConstraintExactness) {
  std::mt19937 rng(31);
  TargetSources exp_src = sources_for([](Complex z) { return std::exp(z) * std::cos(2.0 * z); });
  for (int k = 1; k <= 3; ++k) {
    SampleSet s = sample_set_for(k, 40, exp_src);
    ConstraintSystem c;
    for (int j = -k; j <= k; ++j) c.push_back({Functional::point(j), exp_src.interval(j)});
    FitResult fit = fit_constrained(s, c, k == 1 ? 1e-4 : 1.0, 60);
    for (const auto& con : c) {
      EXPECT_LE(std::abs(apply_to_poly(con.functional, fit.p) - con.value), 1e-9 * (1.0 + std::abs(con.value)));
    }
  }
}

TEST(FitProperties, MonotoneInDegreeCap) {
  SampleSet s = sample_set_for(1, 40, sin_sources());
  ConstraintSystem c{{Functional::point(0.0), 0.0}, {Functional::point(1.0), std::sin(1.0)}};
  double previous = std::numeric_limits<double>::infinity();
  for (int cap = 2; cap <= 30; cap += 4) {
    double err;
    try {
      err = fit_constrained(s, c, 1e-9, cap).certified_error;
    } catch (const InfeasibleBudget& e) {
      err = e.best_error();
    }
    EXPECT_LE(err, previous * (1.0 + 1e-12)) << "cap " << cap;
    previous = err;
  }
}

TEST(FitProperties, NearMinimaxOnSmallInstances) {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int npts = 8 + trial % 5;
    const int degree = 1 + trial % 4;
    const int ncon = std::min(trial % 3, degree);
    std::vector<double> xs, ts;
    std::vector<Sample> pts;
    for (int k = 0; k < npts; ++k) {
      double x = -1.0 + 2.0 * k / (npts - 1);
      double t = std::sin(3.0 * x) + 0.3 * u(rng);
      xs.push_back(x);
      ts.push_back(t);
      pts.push_back({Complex(x, 0.0), Region::Interval, t});
    }
    std::vector<double> cx, cv;
    ConstraintSystem c;
    for (int q = 0; q < ncon; ++q) {
      double x = q == 0 ? 0.1 : -0.6;
      cx.push_back(x);
      cv.push_back(0.5 * u(rng));
      c.push_back({Functional::point(x), cv.back()});
    }
    FitResult fit = fit_at_degree(explicit_samples(pts), c, degree);
    double brute = oracle::brute_force_minimax(xs, ts, cx, cv, degree);
    // brute is an upper bound on the true minimax error.
    EXPECT_LE(fit.certified_error, 1.5 * brute + 1e-12) << "trial " << trial;
  }
}

TEST(FitProperties, DiskInteriorControlledByBoundary) {
  // Disk target is itself a polynomial, so the fit error is one on the disk.
  Polynomial prev{0.3, 1.0, -0.5, 0.2, 0.05};
  TargetSources src;
  src.disk = [prev](Complex z) { return eval(prev, z); };
  src.interval = [](double x) { return Complex(std::sin(x) + 0.1 * x); };
  for (int k = 2; k <= 3; ++k) {
    SampleSet s = sample_set_for(k, 30, src);
    FitResult fit = fit_at_degree(s, {}, 30);
    double boundary = 0.0;
    SampleSet fine = sample_geometry(s.geometry, 30, s.sources, 4);
    for (const auto& p : fine.points) {
      if (p.region == Region::DiskBoundary) boundary = std::max(boundary, std::abs(eval(fit.p, p.z) - p.target));
    }
    double interior = 0.0;
    for (Complex z : disk_grid(k - 1.0, 20, 180)) interior = std::max(interior, std::abs(eval(fit.p, z) - eval(prev, z)));
    EXPECT_LE(interior, boundary * (1.0 + 1e-3)) << "k " << k;
  }
}

TEST(FitProperties, MomentConstraintsAreExact) {
  SampleSet s = sample_set_for(2, 40, sin_sources());
  ConstraintSystem c;
  for (int j = -2; j <= 2; ++j) c.push_back({Functional::point(j), std::sin(static_cast<double>(j))});
  for (int i = 1; i <= 2; ++i) {
    for (int j = -1; j <= 2; ++j) {
      Functional F = Functional::moment(i, j, 2);
      c.push_back({F, oracle::nested_moment([](double t) { return Complex(std::sin(t)); }, i, j, 2)});
    }
  }
  FitResult fit = fit_constrained(s, c, 1e-3, 60);
  EXPECT_LE(constraint_residual(fit.p, c), 1e-9);
  EXPECT_LE(fit.certified_error, 0.9e-3);
}
