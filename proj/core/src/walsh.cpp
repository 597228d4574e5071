#include "tangential/walsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

namespace tangential {

namespace {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

std::vector<double> chebyshev_extrema(double lo, double hi, int count) {
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < count; ++i) {
    // Ascending order, endpoints exact.
    double x = mid - half * std::cos(std::numbers::pi * i / (count - 1));
    if (i == 0) x = lo;
    if (i == count - 1) x = hi;
    xs[static_cast<std::size_t>(i)] = x;
  }
  return xs;
}

double basis_scale(const Geometry& g) {
  double extent = g.extent();
  return extent > 2.0 ? extent : 1.0;
}

MatrixC vandermonde(const std::vector<Sample>& pts, int degree, double scale) {
  const auto rows = static_cast<Eigen::Index>(pts.size());
  MatrixC V(rows, degree + 1);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Complex w = pts[static_cast<std::size_t>(r)].z / scale;
    Complex acc(1.0, 0.0);
    for (int n = 0; n <= degree; ++n) {
      V(r, n) = acc;
      acc *= w;
    }
  }
  return V;
}

double max_abs_error(const Polynomial& p, const std::vector<Sample>& pts) {
  double worst = 0.0;
  for (const auto& s : pts) worst = std::max(worst, std::abs(eval(p, s.z) - s.target));
  return worst;
}

}  // namespace

double Geometry::extent() const {
  double e = disk_radius;
  for (const auto& iv : intervals) e = std::max({e, std::abs(iv.lo), std::abs(iv.hi)});
  return e;
}

int samples_per_region(int degree) { return std::max(64, 8 * (degree + 1)); }

Geometry stage_geometry(int k) {
  if (k < 1) throw std::invalid_argument("stage index must be >= 1");
  Geometry g;
  if (k == 1) {
    g.intervals = {{-1.0, 1.0}};
    return g;
  }
  const double inner = static_cast<double>(k - 1);
  const double outer = static_cast<double>(k);
  g.disk_radius = inner;
  g.intervals = {{-outer, -inner}, {inner, outer}};
  return g;
}

SampleSet sample_geometry(const Geometry& geometry, int degree, const TargetSources& sources, int density) {
  if (density < 1) throw std::invalid_argument("sample density must be >= 1");
  if (!sources.interval) throw std::invalid_argument("interval target source is required");
  if (geometry.disk_radius > 0.0 && !sources.disk) throw std::invalid_argument("disk target source is required");

  SampleSet s;
  s.geometry = geometry;
  s.sources = sources;
  s.degree = degree;
  const int base = samples_per_region(degree);

  if (geometry.disk_radius > 0.0) {
    const int count = base * density;
    for (int i = 0; i < count; ++i) {
      double theta = 2.0 * std::numbers::pi * i / count;
      Complex z = std::polar(geometry.disk_radius, theta);
      // Snap the axis points so the disk meets the intervals exactly.
      if (4 * i == count) z = Complex(0.0, geometry.disk_radius);
      if (2 * i == count) z = Complex(-geometry.disk_radius, 0.0);
      if (4 * i == 3 * count) z = Complex(0.0, -geometry.disk_radius);
      if (i == 0) z = Complex(geometry.disk_radius, 0.0);
      s.points.push_back({z, Region::DiskBoundary, sources.disk(z)});
    }
  }
  for (const auto& iv : geometry.intervals) {
    const int count = (base - 1) * density + 1;
    for (double x : chebyshev_extrema(iv.lo, iv.hi, count)) {
      s.points.push_back({Complex(x, 0.0), Region::Interval, sources.interval(x)});
    }
  }
  return s;
}

SampleSet sample_set_for(int k, int degree, const TargetSources& sources) {
  return sample_geometry(stage_geometry(k), degree, sources);
}

SampleSet explicit_samples(std::vector<Sample> points) {
  SampleSet s;
  s.points = std::move(points);
  for (const auto& p : s.points) {
    if (p.region == Region::Interval) {
      s.geometry.intervals.push_back({p.z.real(), p.z.real()});
    } else {
      s.geometry.disk_radius = std::max(s.geometry.disk_radius, std::abs(p.z));
    }
  }
  return s;
}

InfeasibleBudget::InfeasibleBudget(double best_error, double budget, int degree_cap, int stage)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(6);
        os << "InfeasibleBudget";
        if (stage > 0) os << " at stage " << stage;
        os << ": best certified error " << best_error << " exceeds budget " << budget << " up to degree cap "
           << degree_cap;
        return os.str();
      }()),
      best_error_(best_error),
      budget_(budget),
      degree_cap_(degree_cap),
      stage_(stage) {}

double constraint_residual(const Polynomial& p, const ConstraintSystem& c) {
  double worst = 0.0;
  for (const auto& con : c) {
    double r = std::abs(apply_to_poly(con.functional, p) - con.value) / (1.0 + std::abs(con.value));
    worst = std::max(worst, r);
  }
  return worst;
}

double certify_sup_error(const Polynomial& p, const SampleSet& s, int refine) {
  if (refine < 2) throw std::invalid_argument("certification refinement must be >= 2");
  if (!s.regenerable()) return max_abs_error(p, s.points);
  SampleSet fine = sample_geometry(s.geometry, s.degree, s.sources, refine);
  return max_abs_error(p, fine.points);
}

FitResult fit_at_degree(const SampleSet& s, const ConstraintSystem& c, int degree, const FitOptions& opts) {
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  const int ncoef = degree + 1;
  const int ncon = static_cast<int>(c.size());
  if (ncon > ncoef) {
    throw std::invalid_argument("constraint count " + std::to_string(ncon) + " exceeds coefficient count " +
                                std::to_string(ncoef));
  }

  SampleSet working = s.regenerable() ? sample_geometry(s.geometry, degree, s.sources) : s;
  const auto& pts = working.points;
  const double scale = basis_scale(working.geometry);
  const auto rows = static_cast<Eigen::Index>(pts.size());

  MatrixC V = vandermonde(pts, degree, scale);
  VectorC b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) b(r) = pts[static_cast<std::size_t>(r)].target;

  // Exact elimination of the constraints: C^H P = Q R, a = Q1 u1 + Q2 y.
  VectorC particular = VectorC::Zero(ncoef);
  MatrixC null_basis;
  if (ncon > 0) {
    MatrixC C(ncon, ncoef);
    VectorC rhs(ncon);
    for (int i = 0; i < ncon; ++i) {
      for (int n = 0; n < ncoef; ++n) C(i, n) = apply_to_monomial(c[static_cast<std::size_t>(i)].functional, n, scale);
      double norm = C.row(i).norm();
      if (norm == 0.0) throw RankDeficient("constraint " + c[static_cast<std::size_t>(i)].functional.describe() +
                                           " vanishes on all monomials up to degree " + std::to_string(degree));
      C.row(i) /= norm;
      rhs(i) = c[static_cast<std::size_t>(i)].value / norm;
    }
    Eigen::ColPivHouseholderQR<MatrixC> qr(ncoef, ncon);
    qr.setThreshold(1e-13);
    qr.compute(C.adjoint());
    if (qr.rank() < ncon) {
      throw RankDeficient("constraint matrix has rank " + std::to_string(qr.rank()) + " < " + std::to_string(ncon) +
                          " at degree " + std::to_string(degree));
    }
    MatrixC Q = qr.householderQ();
    MatrixC R1 = qr.matrixR().topLeftCorner(ncon, ncon).template triangularView<Eigen::Upper>();
    VectorC permuted = qr.colsPermutation().transpose() * rhs;
    VectorC u1 = R1.adjoint().template triangularView<Eigen::Lower>().solve(permuted);
    particular = Q.leftCols(ncon) * u1;
    null_basis = Q.rightCols(ncoef - ncon);
  } else {
    null_basis = MatrixC::Identity(ncoef, ncoef);
  }

  VectorC best = particular;
  double best_sample_error = 0.0;
  const auto free_dims = null_basis.cols();
  if (free_dims == 0 || rows == 0) {
    VectorC res = V * particular - b;
    best_sample_error = rows == 0 ? 0.0 : res.cwiseAbs().maxCoeff();
  } else {
    MatrixC M = V * null_basis;
    VectorC target = b - V * particular;
    VectorR weights = VectorR::Constant(rows, 1.0 / static_cast<double>(rows));
    best_sample_error = std::numeric_limits<double>::infinity();
    Eigen::ColPivHouseholderQR<MatrixC> ls(rows, free_dims);
    for (int round = 0; round < opts.lawson_rounds; ++round) {
      VectorR root = weights.cwiseSqrt();
      ls.compute(root.asDiagonal() * M);
      VectorC y = ls.solve(root.asDiagonal() * target);
      VectorR err = (M * y - target).cwiseAbs();
      double worst = err.maxCoeff();
      if (worst < best_sample_error) {
        best_sample_error = worst;
        best = particular + null_basis * y;
      }
      if (worst == 0.0) break;
      weights = weights.cwiseProduct(err);
      double total = weights.sum();
      if (!(total > 0.0)) break;
      weights /= total;
      weights = weights.cwiseMax(opts.weight_floor);
    }
  }

  std::vector<Complex> coeffs(static_cast<std::size_t>(ncoef));
  double inv = 1.0 / scale;
  double factor = 1.0;
  for (int n = 0; n < ncoef; ++n) {
    coeffs[static_cast<std::size_t>(n)] = best(n) * factor;
    factor *= inv;
  }

  FitResult out;
  out.p = Polynomial(std::move(coeffs));
  out.degree = degree;
  out.sample_error = best_sample_error;
  out.certified_error = certify_sup_error(out.p, working, std::max(2, opts.refine));
  out.constraint_residual = constraint_residual(out.p, c);
  return out;
}

FitResult fit_constrained(const SampleSet& s, const ConstraintSystem& c, double budget, int degree_cap,
                          const FitOptions& opts) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  const int ncon = static_cast<int>(c.size());
  if (ncon > degree_cap + 1) {
    throw std::invalid_argument("constraint count " + std::to_string(ncon) + " exceeds degree cap + 1");
  }

  std::vector<int> degrees;
  for (int d = std::min(ncon, degree_cap); d <= degree_cap; d += opts.degree_step) degrees.push_back(d);
  if (degrees.back() != degree_cap) degrees.push_back(degree_cap);

  // A fit that only just meets the budget on E_k tends to be wild on the rest
  // of the next disk, which the following stage then has to reproduce.
  std::optional<FitResult> best;
  for (int d : degrees) {
    FitResult fit = fit_at_degree(s, c, d, opts);
    if (fit.constraint_residual > opts.constraint_tolerance) continue;
    const bool accepted = best && best->certified_error <= opts.acceptance * budget;
    if (accepted && !(fit.certified_error * opts.polish_gain < best->certified_error)) break;
    if (!best || fit.certified_error < best->certified_error) best = std::move(fit);
    if (best->certified_error <= opts.acceptance * budget && opts.polish_gain <= 1.0) break;
  }
  if (best && best->certified_error <= opts.acceptance * budget) return *best;
  throw InfeasibleBudget(best ? best->certified_error : std::numeric_limits<double>::infinity(), budget, degree_cap);
}

std::vector<Complex> disk_grid(double radius, int radial, int angular) {
  std::vector<Complex> pts{Complex(0.0, 0.0)};
  for (int i = 1; i <= radial; ++i) {
    double r = radius * i / radial;
    for (int j = 0; j < angular; ++j) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angular));
  }
  return pts;
}

}  // namespace tangential
