#include "tangential/stages.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "tangential/quadrature.hpp"

namespace tangential {

namespace {

constexpr int kGridPerUnit = 100;  // 1 / EpsilonProfile::kStep

// Phi_r(h)(x) for x on the far side of the junction c, where h = prev up to c
// and phi beyond it. The prev part continues its own antiderivative chain by
// Taylor expansion at c; the phi part is the Cauchy repeated-integral kernel.
Complex glued_antiderivative(const Polynomial& prev, const Expr& phi, int r, double c, double x) {
  Complex total(0.0, 0.0);
  double power = 1.0;
  double factorial = 1.0;
  for (int s = 0; s < r; ++s) {
    if (s > 0) {
      power *= (x - c);
      factorial *= s;
    }
    total += eval(iterated_antiderivative(prev, r - s), c) * (power / factorial);
  }
  double kernel_norm = 1.0;
  for (int s = 2; s < r; ++s) kernel_norm *= s;
  auto integrand = [&](double t) { return std::pow(x - t, r - 1) / kernel_norm * evaluate(phi, t); };
  total += integrate(integrand, c, x, kMomentTolerance / 10.0);
  return total;
}

Complex glued_moment(const Polynomial& prev, const Expr& phi, const Moment& mo, int k) {
  const int r = mo.depth();
  const double inner = static_cast<double>(k - 1);
  if (mo.j - 1 >= -(k - 1) && mo.j <= k - 1) return apply_to_poly(Functional::moment(mo.i, mo.j, mo.m), prev);
  Polynomial chain = iterated_antiderivative(prev, r);
  if (mo.j == k) return glued_antiderivative(prev, phi, r, inner, k) - eval(chain, inner);
  if (mo.j == -(k - 1)) return eval(chain, -inner) - glued_antiderivative(prev, phi, r, -inner, -static_cast<double>(k));
  throw std::logic_error("moment cell outside E_k");
}

struct RegionErrors {
  std::optional<double> disk;
  double left = 0.0;
  double right = 0.0;
};

RegionErrors region_errors(const Polynomial& p, const SampleSet& s, int degree, int refine) {
  SampleSet fine = sample_geometry(s.geometry, degree, s.sources, refine);
  RegionErrors out;
  for (const auto& pt : fine.points) {
    double err = std::abs(eval(p, pt.z) - pt.target);
    if (pt.region == Region::DiskBoundary) {
      out.disk = std::max(out.disk.value_or(0.0), err);
    } else if (pt.z.real() < 0.0) {
      out.left = std::max(out.left, err);
    } else {
      out.right = std::max(out.right, err);
    }
  }
  return out;
}

}  // namespace

EpsilonProfile EpsilonProfile::radialize(const Expr& eps, int radius) {
  if (radius < 0) throw std::invalid_argument("radialization radius must be nonnegative");
  const int last = radius * kGridPerUnit;
  const int check = (radius + 1) * kGridPerUnit;

  auto value_at = [&](int index) {
    double t = static_cast<double>(index) / kGridPerUnit;
    Complex v = evaluate(eps, t);
    if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-12 * std::abs(v.real())) throw NonPositiveEnvelope(t, v);
    return v.real();
  };

  EpsilonProfile out;
  out.source_ = eps;
  out.table_.resize(static_cast<std::size_t>(last) + 1);
  double running = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= check; ++i) {
    double lo = std::min(value_at(i), value_at(-i));
    if (i <= last) {
      running = std::min(running, lo);
      out.table_[static_cast<std::size_t>(i)] = kSafety * running;
    }
  }
  return out;
}

EpsilonProfile EpsilonProfile::from_table(std::vector<double> table) {
  if (table.empty()) throw std::invalid_argument("empty envelope table");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i] > 0.0)) throw NonPositiveEnvelope(static_cast<double>(i) / kGridPerUnit, table[i]);
    if (i > 0 && table[i] > table[i - 1]) throw std::invalid_argument("envelope table must be nonincreasing");
  }
  EpsilonProfile out;
  out.table_ = std::move(table);
  return out;
}

EpsilonProfile EpsilonProfile::constant(double value, int radius) {
  return from_table(std::vector<double>(static_cast<std::size_t>(radius * kGridPerUnit) + 1, value));
}

double EpsilonProfile::operator()(double r) const {
  double scaled = (std::abs(r) + shift_) * kGridPerUnit;
  auto index = static_cast<long long>(std::ceil(scaled - 1e-7));
  if (index < 0) index = 0;
  if (index >= static_cast<long long>(table_.size())) {
    std::ostringstream os;
    os << "envelope lookup at radius " << r << " (shift " << shift_ << ") beyond table radius "
       << static_cast<double>(table_.size() - 1) / kGridPerUnit;
    throw std::out_of_range(os.str());
  }
  return table_[static_cast<std::size_t>(index)];
}

EpsilonProfile EpsilonProfile::shifted(int by) const {
  if (by < 0) throw std::invalid_argument("envelope shift must be nonnegative");
  EpsilonProfile out = *this;
  out.shift_ += by;
  if (out.radius() < 0.0) throw std::out_of_range("envelope shift exceeds table radius");
  return out;
}

double EpsilonProfile::radius() const {
  return static_cast<double>(table_.size() - 1) / kGridPerUnit - static_cast<double>(shift_);
}

NonPositiveEnvelope::NonPositiveEnvelope(double t, Complex value)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "NonPositiveEnvelope: epsilon(" << t << ") = " << value.real();
        if (value.imag() != 0.0) os << (value.imag() < 0 ? " - " : " + ") << std::abs(value.imag()) << "i";
        os << " is not a positive real";
        return os.str();
      }()),
      t_(t) {}

GlueDiscontinuity::GlueDiscontinuity(int k, double mismatch_left, double mismatch_right)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(6);
        os << "GlueDiscontinuity at stage " << k << ": previous polynomial misses phi by " << mismatch_left
           << " at " << -(k - 1) << " and " << mismatch_right << " at " << (k - 1);
        return os.str();
      }()),
      mismatch_(std::max(mismatch_left, mismatch_right)) {}

double budget(const EpsilonProfile& profile, int k) {
  if (k < 1) throw std::invalid_argument("stage index must be >= 1");
  return std::ldexp(profile(static_cast<double>(k)), -(k + 2));
}

SampleSet glue(const Polynomial& prev, const Expr& phi, int k, int degree) {
  if (k < 2) throw std::invalid_argument("gluing needs k >= 2");
  const double junction = static_cast<double>(k - 1);
  auto mismatch = [&](double x) {
    Complex target = evaluate(phi, x);
    return std::pair{std::abs(eval(prev, x) - target), 1e-9 * (1.0 + std::abs(target))};
  };
  auto [left, left_tol] = mismatch(-junction);
  auto [right, right_tol] = mismatch(junction);
  if (left > left_tol || right > right_tol) throw GlueDiscontinuity(k, left, right);

  TargetSources sources;
  sources.disk = [prev](Complex z) { return eval(prev, z); };
  sources.interval = [phi](double x) { return evaluate(phi, x); };
  return sample_set_for(k, degree, sources);
}

StageRun run_stages(const Expr& phi, const EpsilonProfile& profile, int m, int K, int degree_cap,
                    const StageOptions& opts) {
  if (K < 1) throw std::invalid_argument("stage count K must be >= 1");
  if (m < 0) throw std::invalid_argument("derivative order m must be >= 0");
  if (profile.radius() + 1e-9 < K) throw std::out_of_range("envelope profile does not reach radius K");
  const bool fast = !opts.chain.empty();
  if (fast && static_cast<int>(opts.chain.size()) != m + 1) {
    throw std::invalid_argument("derivative chain must have m + 1 entries");
  }

  std::map<std::pair<int, int>, Complex> phi_moments;
  auto phi_moment = [&](int i, int j) {
    auto key = std::pair{i, j};
    if (auto it = phi_moments.find(key); it != phi_moments.end()) return it->second;
    Functional F = Functional::moment(i, j, m);
    Complex v = fast ? apply_to_function_fast(F, opts.chain) : apply_to_function(F, phi);
    phi_moments.emplace(key, v);
    return v;
  };

  StageRun run;
  Polynomial prev;
  for (int k = 1; k <= K; ++k) {
    Stage st;
    st.k = k;
    st.budget = budget(profile, k);

    ConstraintSystem cs;
    SampleSet samples;
    if (k == 1) {
      TargetSources sources;
      sources.interval = [phi](double x) { return evaluate(phi, x); };
      samples = sample_set_for(1, degree_cap, sources);
      for (int j = -1; j <= 1; ++j) cs.push_back({Functional::point(j), evaluate(phi, j)});
      st.point_constraints = 3;
      for (int i = 1; i <= m; ++i) {
        for (int j = 0; j <= 1; ++j) cs.push_back({Functional::moment(i, j, m), phi_moment(i, j)});
      }
    } else {
      samples = glue(prev, phi, k, degree_cap);
      for (int j = -k; j <= k; ++j) {
        Complex v = std::abs(j) <= k - 1 ? eval(prev, j) : evaluate(phi, j);
        cs.push_back({Functional::point(j), v});
      }
      st.point_constraints = 2 * k + 1;
      for (int i = 1; i <= m; ++i) {
        for (int j = -(k - 1); j <= k; ++j) {
          Complex glued = glued_moment(prev, phi, Moment{i, j, m}, k);
          Complex reference = phi_moment(i, j);
          double gap = std::abs(glued - reference);
          st.glue_moment_gap = std::max(st.glue_moment_gap, gap);
          if (gap > opts.glue_moment_tolerance * (1.0 + std::abs(reference))) {
            std::ostringstream os;
            os.precision(6);
            os << "stage " << k << ": glued-target moment T_" << i << "^" << j << " differs from the target's by "
               << gap;
            throw std::runtime_error(os.str());
          }
          cs.push_back({Functional::moment(i, j, m), glued});
        }
      }
    }
    st.moment_constraints = static_cast<int>(cs.size()) - st.point_constraints;

    FitResult fit;
    try {
      fit = fit_constrained(samples, cs, st.budget, degree_cap, opts.fit);
    } catch (const InfeasibleBudget& e) {
      throw InfeasibleBudget(e.best_error(), e.budget(), e.degree_cap(), k);
    } catch (const RankDeficient& e) {
      throw RankDeficient("stage " + std::to_string(k) + ": " + e.what());
    }

    st.g = fit.p;
    st.degree = fit.degree;
    RegionErrors regions = region_errors(fit.p, samples, fit.degree, std::max(2, opts.fit.refine));
    st.disk_error = regions.disk;
    st.left_error = regions.left;
    st.right_error = regions.right;
    if (k >= 2) {
      Polynomial step = linear_combine(1.0, fit.p, -1.0, prev);
      double worst = 0.0;
      const int angular = samples_per_region(fit.degree) * std::max(2, opts.fit.refine);
      for (Complex z : disk_grid(static_cast<double>(k - 1), 8, angular)) worst = std::max(worst, std::abs(eval(step, z)));
      st.step_on_disk = worst;
    }
    for (std::size_t c = 0; c < cs.size(); ++c) {
      double r = std::abs(apply_to_poly(cs[c].functional, fit.p) - cs[c].value) / (1.0 + std::abs(cs[c].value));
      double& slot = cs[c].functional.is_point() ? st.point_residual : st.moment_residual;
      slot = std::max(slot, r);
    }

    prev = fit.p;
    run.stages.push_back(std::move(st));
  }
  run.g = prev;
  return run;
}

}  // namespace tangential
