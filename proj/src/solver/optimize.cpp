#include "solvq/solver/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace solvq::solver {

std::string to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::gradient_descent: return "gradient_descent";
    case OptimizerKind::rotosolve: return "rotosolve";
    case OptimizerKind::bfgs: return "bfgs";
  }
  return "unknown";
}

OptimizerKind optimizer_from_string(const std::string& name) {
  if (name == "gradient_descent") return OptimizerKind::gradient_descent;
  if (name == "rotosolve") return OptimizerKind::rotosolve;
  if (name == "bfgs") return OptimizerKind::bfgs;
  throw InputError("unknown optimizer '" + name + "'");
}

namespace {

class Counter {
 public:
  Counter(const FreeEnergy& cost, std::uint64_t seed) : cost_(cost), seed_(seed) {}
  double value(const Vec& theta) {
    ++evaluations;
    return cost_(theta, seed_ + next_++);
  }
  Vec gradient(const Vec& theta, const OptimizerOptions& o) {
    ++evaluations;
    return cost_.gradient(theta, o.gradient, o.fd_step, seed_ + next_++);
  }
  int evaluations = 0;

 private:
  const FreeEnergy& cost_;
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

OptimizationResult gradient_descent(const FreeEnergy& cost, Vec theta, const OptimizerOptions& o, std::uint64_t seed) {
  Counter c(cost, seed);
  OptimizationResult r;
  double f = c.value(theta);
  Vec g = c.gradient(theta, o);
  double step = o.step;
  int quiet = 0;
  r.trace.push_back({0, f, g.norm()});
  for (int it = 1; it <= o.max_iterations; ++it) {
    r.iterations = it;
    if (g.norm() < o.gradient_tolerance) {
      r.converged = true;
      break;
    }
    const Vec trial = theta - step * g;
    const double ft = c.value(trial);
    if (o.adaptive_step && ft > f) {
      step *= 0.5;
      r.trace.push_back({it, f, g.norm()});
      if (step < 1e-12) break;
      continue;
    }
    const double df = std::abs(ft - f);
    theta = trial;
    f = ft;
    g = c.gradient(theta, o);
    if (o.adaptive_step) step *= 1.2;
    r.trace.push_back({it, f, g.norm()});
    quiet = df < o.tolerance ? quiet + 1 : 0;
    if (quiet >= o.window) {
      r.converged = true;
      break;
    }
  }
  r.theta = theta;
  r.value = f;
  r.evaluations = c.evaluations;
  return r;
}

/// Minimizes f(t0 + phi) given samples at phi_s = 2 pi s / (2K + 1), assuming
/// f = a0 + sum_{n<=K} a_n cos(n phi) + b_n sin(n phi). Returns the angle.
double fit_and_minimize(const std::vector<double>& y, double t0) {
  const double pi = std::numbers::pi;
  const int n_samples = static_cast<int>(y.size());
  const int n_harmonics = (n_samples - 1) / 2;
  std::vector<double> a(static_cast<std::size_t>(n_harmonics) + 1, 0.0);
  std::vector<double> b(a.size(), 0.0);
  for (int s = 0; s < n_samples; ++s) {
    const double phi = 2.0 * pi * s / n_samples;
    const double v = y[static_cast<std::size_t>(s)];
    a[0] += v / n_samples;
    for (int n = 1; n <= n_harmonics; ++n) {
      a[static_cast<std::size_t>(n)] += 2.0 / n_samples * v * std::cos(n * phi);
      b[static_cast<std::size_t>(n)] += 2.0 / n_samples * v * std::sin(n * phi);
    }
  }
  // Value, first and second derivative of the model.
  auto model = [&](double phi, double* d1, double* d2) {
    double v = a[0];
    double g = 0.0, h = 0.0;
    for (int n = 1; n <= n_harmonics; ++n) {
      const double c = std::cos(n * phi), sn = std::sin(n * phi);
      const double an = a[static_cast<std::size_t>(n)], bn = b[static_cast<std::size_t>(n)];
      v += an * c + bn * sn;
      g += n * (-an * sn + bn * c);
      h += n * n * (-an * c - bn * sn);
    }
    if (d1) *d1 = g;
    if (d2) *d2 = h;
    return v;
  };
  double best_phi = 0.0;
  double best = model(0.0, nullptr, nullptr);
  constexpr int kGrid = 1440;
  for (int k = 1; k < kGrid; ++k) {
    const double phi = 2.0 * pi * k / kGrid;
    const double v = model(phi, nullptr, nullptr);
    if (v < best) {
      best = v;
      best_phi = phi;
    }
  }
  for (int k = 0; k < 20; ++k) {
    double d1 = 0.0, d2 = 0.0;
    model(best_phi, &d1, &d2);
    if (d2 <= 0.0) break;
    const double next = best_phi - d1 / d2;
    if (std::abs(next - best_phi) < 1e-14) break;
    best_phi = next;
  }
  return std::remainder(t0 + best_phi, 2.0 * pi);
}

OptimizationResult rotosolve(const FreeEnergy& cost, Vec theta, const OptimizerOptions& o, std::uint64_t seed) {
  Counter c(cost, seed);
  OptimizationResult r;
  double f = c.value(theta);
  r.trace.push_back({0, f, std::numeric_limits<double>::quiet_NaN()});
  int quiet = 0;
  const double pi = std::numbers::pi;
  // Each gate contributes harmonics up to 2 in its angle to <H0>; the solvent
  // term is quadratic in the 1-RDM and doubles that.
  const int n_samples = cost.solvated() ? 9 : 5;
  std::vector<double> y(static_cast<std::size_t>(n_samples));
  for (int it = 1; it <= o.max_iterations; ++it) {
    r.iterations = it;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      const double t0 = theta(k);
      for (int s = 0; s < n_samples; ++s) {
        Vec t = theta;
        t(k) = t0 + 2.0 * pi * s / n_samples;
        y[static_cast<std::size_t>(s)] = c.value(t);
      }
      theta(k) = fit_and_minimize(y, t0);
    }
    const double fn = c.value(theta);
    const double df = std::abs(fn - f);
    f = fn;
    r.trace.push_back({it, f, std::numeric_limits<double>::quiet_NaN()});
    quiet = df < o.tolerance ? quiet + 1 : 0;
    if (quiet >= o.window) {
      r.converged = true;
      break;
    }
  }
  r.theta = theta;
  r.value = f;
  r.evaluations = c.evaluations;
  return r;
}

struct BfgsContext {
  Counter* counter;
  const OptimizerOptions* options;
};

Vec to_vec(const gsl_vector* x) {
  Vec v(static_cast<Eigen::Index>(x->size));
  for (std::size_t i = 0; i < x->size; ++i) v(static_cast<Eigen::Index>(i)) = gsl_vector_get(x, i);
  return v;
}

double bfgs_f(const gsl_vector* x, void* p) {
  auto* ctx = static_cast<BfgsContext*>(p);
  return ctx->counter->value(to_vec(x));
}

void bfgs_df(const gsl_vector* x, void* p, gsl_vector* g) {
  auto* ctx = static_cast<BfgsContext*>(p);
  const Vec grad = ctx->counter->gradient(to_vec(x), *ctx->options);
  for (std::size_t i = 0; i < g->size; ++i) gsl_vector_set(g, i, grad(static_cast<Eigen::Index>(i)));
}

void bfgs_fdf(const gsl_vector* x, void* p, double* f, gsl_vector* g) {
  *f = bfgs_f(x, p);
  bfgs_df(x, p, g);
}

double gsl_norm(const gsl_vector* g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g->size; ++i) s += gsl_vector_get(g, i) * gsl_vector_get(g, i);
  return std::sqrt(s);
}

OptimizationResult bfgs(const FreeEnergy& cost, Vec theta, const OptimizerOptions& o, std::uint64_t seed) {
  Counter c(cost, seed);
  OptimizationResult r;
  const auto n = static_cast<std::size_t>(theta.size());
  if (n == 0) {
    r.value = c.value(theta);
    r.theta = theta;
    r.converged = true;
    r.evaluations = c.evaluations;
    r.trace.push_back({0, r.value, 0.0});
    return r;
  }
  // Errors are reported through status codes, never by aborting.
  static std::once_flag quiet_gsl;
  std::call_once(quiet_gsl, [] { gsl_set_error_handler_off(); });
  BfgsContext ctx{&c, &o};
  gsl_multimin_function_fdf fn{bfgs_f, bfgs_df, bfgs_fdf, n, &ctx};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, theta(static_cast<Eigen::Index>(i)));
  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> s(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n), gsl_multimin_fdfminimizer_free);
  gsl_multimin_fdfminimizer_set(s.get(), &fn, x.get(), o.step, 0.1);
  double f = s->f;
  r.trace.push_back({0, f, gsl_norm(s->gradient)});
  int quiet = 0;
  for (int it = 1; it <= o.max_iterations; ++it) {
    r.iterations = it;
    if (gsl_norm(s->gradient) < o.gradient_tolerance) {
      r.converged = true;
      break;
    }
    const int status = gsl_multimin_fdfminimizer_iterate(s.get());
    const double df = std::abs(s->f - f);
    f = s->f;
    r.trace.push_back({it, f, gsl_norm(s->gradient)});
    if (status != GSL_SUCCESS) {
      // No further progress along the search direction: a stationary point
      // to line-search precision.
      r.converged = status == GSL_ENOPROG && df < o.tolerance;
      break;
    }
    quiet = df < o.tolerance ? quiet + 1 : 0;
    if (quiet >= o.window) {
      r.converged = true;
      break;
    }
  }
  r.theta = to_vec(s->x);
  r.value = s->f;
  r.evaluations = c.evaluations;
  return r;
}

}  // namespace

OptimizationResult minimize(const FreeEnergy& cost, Vec theta0, const OptimizerOptions& options, std::uint64_t seed) {
  if (!(options.tolerance > 0.0)) throw InputError("optimizer tolerance must be positive");
  if (options.max_iterations < 1) throw InputError("optimizer needs at least one iteration");
  if (options.window < 1) throw InputError("convergence window must be >= 1");
  if (theta0.size() != cost.n_params()) throw InputError("initial parameters have the wrong length");
  if (options.kind == OptimizerKind::gradient_descent) {
    if (!(options.step > 0.0)) throw InputError("gradient-descent step must be positive");
    return gradient_descent(cost, std::move(theta0), options, seed);
  }
  if (options.kind == OptimizerKind::bfgs) {
    if (!(options.step > 0.0)) throw InputError("BFGS initial step must be positive");
    return bfgs(cost, std::move(theta0), options, seed);
  }
  return rotosolve(cost, std::move(theta0), options, seed);
}

}  // namespace solvq::solver
