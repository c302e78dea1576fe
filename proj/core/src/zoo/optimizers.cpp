#include "pstraj/zoo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <memory>

#include "pstraj/error.hpp"

namespace pstraj::zoo {

using Vec2 = std::array<double, 2>;

double rosenbrock(const Vec2& p) {
  const double a = 1.0 - p[0];
  const double b = p[1] - p[0] * p[0];
  return a * a + 100.0 * b * b;
}

Vec2 rosenbrock_grad(const Vec2& p) {
  const double b = p[1] - p[0] * p[0];
  return {-2.0 * (1.0 - p[0]) - 400.0 * p[0] * b, 200.0 * b};
}

const std::vector<std::string_view>& optimizer_ids() {
  static const std::vector<std::string_view> ids = {"sgd",         "momentum", "cg",   "quasi_newton",
                                                    "nelder_mead", "nelder_mead_adaptive", "adam", "lbfgs_like"};
  return ids;
}

namespace {

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
Vec2 axpy(const Vec2& x, double a, const Vec2& p) { return {x[0] + a * p[0], x[1] + a * p[1]}; }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxHalvings = 60;

// Backtracking from a unit step; returns 0 when no decrease is found.
double backtrack(const Vec2& x, const Vec2& g, const Vec2& p) {
  const double f0 = rosenbrock(x);
  const double slope = dot(g, p);
  double alpha = 1.0;
  for (int i = 0; i < kMaxHalvings; ++i) {
    if (rosenbrock(axpy(x, alpha, p)) <= f0 + kArmijo * alpha * slope) return alpha;
    alpha *= kShrink;
  }
  return 0.0;
}

// Weak Wolfe bisection (Armijo plus curvature 0.9), expanding from a unit step.
// Plain backtracking leaves limited-memory updates badly scaled on the valley floor.
double wolfe(const Vec2& x, const Vec2& g, const Vec2& p) {
  const double f0 = rosenbrock(x);
  const double slope = dot(g, p);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double alpha = 1.0;
  for (int i = 0; i < kMaxHalvings; ++i) {
    const Vec2 trial = axpy(x, alpha, p);
    if (rosenbrock(trial) > f0 + kArmijo * alpha * slope) {
      hi = alpha;
    } else if (dot(rosenbrock_grad(trial), p) < 0.9 * slope) {
      lo = alpha;
    } else {
      return alpha;
    }
    alpha = std::isinf(hi) ? 2.0 * alpha : 0.5 * (lo + hi);
  }
  return lo;
}

class Method {
 public:
  virtual ~Method() = default;
  virtual Vec2 next() = 0;
};

class Sgd : public Method {
 public:
  Sgd(Vec2 x, double lr) : x_(x), lr_(lr) {}
  Vec2 next() override {
    x_ = axpy(x_, -lr_, rosenbrock_grad(x_));
    return x_;
  }

 private:
  Vec2 x_;
  double lr_;
};

class Momentum : public Method {
 public:
  Momentum(Vec2 x, double lr) : x_(x), lr_(lr) {}
  Vec2 next() override {
    const Vec2 g = rosenbrock_grad(x_);
    v_ = {0.9 * v_[0] - lr_ * g[0], 0.9 * v_[1] - lr_ * g[1]};
    x_ = axpy(x_, 1.0, v_);
    return x_;
  }

 private:
  Vec2 x_;
  Vec2 v_{0.0, 0.0};
  double lr_;
};

class Adam : public Method {
 public:
  Adam(Vec2 x, double lr) : x_(x), lr_(lr) {}
  Vec2 next() override {
    ++t_;
    const Vec2 g = rosenbrock_grad(x_);
    for (int k = 0; k < 2; ++k) {
      m_[k] = 0.9 * m_[k] + 0.1 * g[k];
      v_[k] = 0.999 * v_[k] + 0.001 * g[k] * g[k];
      const double mh = m_[k] / (1.0 - std::pow(0.9, t_));
      const double vh = v_[k] / (1.0 - std::pow(0.999, t_));
      x_[k] -= lr_ * mh / (std::sqrt(vh) + 1e-8);
    }
    return x_;
  }

 private:
  Vec2 x_;
  Vec2 m_{0.0, 0.0};
  Vec2 v_{0.0, 0.0};
  double lr_;
  int t_ = 0;
};

// Nonlinear conjugate gradient, Polak-Ribiere+ with steepest-descent restarts.
class ConjugateGradient : public Method {
 public:
  explicit ConjugateGradient(Vec2 x) : x_(x), g_(rosenbrock_grad(x)), d_{-g_[0], -g_[1]} {}
  Vec2 next() override {
    const double alpha = backtrack(x_, g_, d_);
    x_ = axpy(x_, alpha, d_);
    const Vec2 g_new = rosenbrock_grad(x_);
    const double denom = dot(g_, g_);
    const double beta = denom > 0.0 ? std::max(0.0, dot(g_new, sub(g_new, g_)) / denom) : 0.0;
    d_ = {-g_new[0] + beta * d_[0], -g_new[1] + beta * d_[1]};
    if (dot(g_new, d_) >= 0.0) d_ = {-g_new[0], -g_new[1]};
    g_ = g_new;
    return x_;
  }

 private:
  Vec2 x_;
  Vec2 g_;
  Vec2 d_;
};

// BFGS on the inverse Hessian, identity start rescaled after the first step.
class Bfgs : public Method {
 public:
  explicit Bfgs(Vec2 x) : x_(x), g_(rosenbrock_grad(x)) {}
  Vec2 next() override {
    const Vec2 p = {-(h_[0][0] * g_[0] + h_[0][1] * g_[1]), -(h_[1][0] * g_[0] + h_[1][1] * g_[1])};
    const double alpha = backtrack(x_, g_, p);
    const Vec2 x_new = axpy(x_, alpha, p);
    const Vec2 g_new = rosenbrock_grad(x_new);
    const Vec2 s = sub(x_new, x_);
    const Vec2 y = sub(g_new, g_);
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      if (first_) {
        const double scale = sy / dot(y, y);
        h_ = {{{scale, 0.0}, {0.0, scale}}};
        first_ = false;
      }
      const double rho = 1.0 / sy;
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      std::array<std::array<double, 2>, 2> a{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - rho * s[i] * y[j];
      }
      std::array<std::array<double, 2>, 2> ah{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) ah[i][j] = a[i][0] * h_[0][j] + a[i][1] * h_[1][j];
      }
      std::array<std::array<double, 2>, 2> next_h{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) next_h[i][j] = ah[i][0] * a[j][0] + ah[i][1] * a[j][1] + rho * s[i] * s[j];
      }
      h_ = next_h;
    }
    x_ = x_new;
    g_ = g_new;
    return x_;
  }

 private:
  Vec2 x_;
  Vec2 g_;
  std::array<std::array<double, 2>, 2> h_{{{1.0, 0.0}, {0.0, 1.0}}};
  bool first_ = true;
};

// Limited-memory BFGS, two-loop recursion over the last five pairs.
class Lbfgs : public Method {
 public:
  explicit Lbfgs(Vec2 x) : x_(x), g_(rosenbrock_grad(x)) {}
  Vec2 next() override {
    Vec2 q = g_;
    std::vector<double> alphas(memory_.size());
    for (std::size_t i = memory_.size(); i-- > 0;) {
      const auto& [s, y, rho] = memory_[i];
      alphas[i] = rho * dot(s, q);
      q = axpy(q, -alphas[i], y);
    }
    if (!memory_.empty()) {
      const auto& [s, y, rho] = memory_.back();
      const double gamma = dot(s, y) / dot(y, y);
      q = {gamma * q[0], gamma * q[1]};
    }
    for (std::size_t i = 0; i < memory_.size(); ++i) {
      const auto& [s, y, rho] = memory_[i];
      const double beta = rho * dot(y, q);
      q = axpy(q, alphas[i] - beta, s);
    }
    const Vec2 p = {-q[0], -q[1]};
    const double alpha = wolfe(x_, g_, p);
    const Vec2 x_new = axpy(x_, alpha, p);
    const Vec2 g_new = rosenbrock_grad(x_new);
    const Vec2 s = sub(x_new, x_);
    const Vec2 y = sub(g_new, g_);
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      memory_.push_back({s, y, 1.0 / sy});
      if (memory_.size() > 5) memory_.pop_front();
    }
    x_ = x_new;
    g_ = g_new;
    return x_;
  }

 private:
  struct Pair {
    Vec2 s;
    Vec2 y;
    double rho;
  };
  Vec2 x_;
  Vec2 g_;
  std::deque<Pair> memory_;
};

struct SimplexParams {
  double reflect;
  double expand;
  double contract;
  double shrink;
};

class NelderMead : public Method {
 public:
  NelderMead(Vec2 x, SimplexParams params, bool scaled_start) : p_(params) {
    simplex_[0] = x;
    for (int k = 0; k < 2; ++k) {
      Vec2 v = x;
      if (scaled_start) {
        v[k] += 0.1 * std::max(1.0, std::abs(x[k]));
      } else {
        v[k] = x[k] != 0.0 ? 1.05 * x[k] : 0.00025;
      }
      simplex_[k + 1] = v;
    }
    for (int i = 0; i < 3; ++i) f_[i] = rosenbrock(simplex_[i]);
    order();
  }

  Vec2 next() override {
    const Vec2 c = {(simplex_[0][0] + simplex_[1][0]) / 2.0, (simplex_[0][1] + simplex_[1][1]) / 2.0};
    const Vec2& worst = simplex_[2];
    const Vec2 xr = {c[0] + p_.reflect * (c[0] - worst[0]), c[1] + p_.reflect * (c[1] - worst[1])};
    const double fr = rosenbrock(xr);
    if (fr < f_[0]) {
      const Vec2 xe = {c[0] + p_.expand * (xr[0] - c[0]), c[1] + p_.expand * (xr[1] - c[1])};
      const double fe = rosenbrock(xe);
      fe < fr ? replace_worst(xe, fe) : replace_worst(xr, fr);
    } else if (fr < f_[1]) {
      replace_worst(xr, fr);
    } else {
      bool accepted = false;
      if (fr < f_[2]) {
        const Vec2 xc = {c[0] + p_.contract * (xr[0] - c[0]), c[1] + p_.contract * (xr[1] - c[1])};
        const double fc = rosenbrock(xc);
        if (fc <= fr) {
          replace_worst(xc, fc);
          accepted = true;
        }
      } else {
        const Vec2 xcc = {c[0] - p_.contract * (c[0] - worst[0]), c[1] - p_.contract * (c[1] - worst[1])};
        const double fcc = rosenbrock(xcc);
        if (fcc < f_[2]) {
          replace_worst(xcc, fcc);
          accepted = true;
        }
      }
      if (!accepted) {
        for (int i = 1; i < 3; ++i) {
          simplex_[i] = {simplex_[0][0] + p_.shrink * (simplex_[i][0] - simplex_[0][0]),
                         simplex_[0][1] + p_.shrink * (simplex_[i][1] - simplex_[0][1])};
          f_[i] = rosenbrock(simplex_[i]);
        }
      }
    }
    order();
    return simplex_[0];
  }

 private:
  void replace_worst(const Vec2& x, double f) {
    simplex_[2] = x;
    f_[2] = f;
  }

  void order() {
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f_[a] < f_[b]; });
    const auto s = simplex_;
    const auto f = f_;
    for (int i = 0; i < 3; ++i) {
      simplex_[i] = s[idx[i]];
      f_[i] = f[idx[i]];
    }
  }

  SimplexParams p_;
  std::array<Vec2, 3> simplex_{};
  std::array<double, 3> f_{};
};

std::unique_ptr<Method> make_method(std::string_view id, const Vec2& x, const OptimizerOptions& opts) {
  const auto lr = [&](double fallback) { return opts.learning_rate.value_or(fallback); };
  if (id == "sgd") return std::make_unique<Sgd>(x, lr(1e-3));
  if (id == "momentum") return std::make_unique<Momentum>(x, lr(1e-3));
  if (id == "adam") return std::make_unique<Adam>(x, lr(2e-2));
  if (id == "cg") return std::make_unique<ConjugateGradient>(x);
  if (id == "quasi_newton") return std::make_unique<Bfgs>(x);
  if (id == "lbfgs_like") return std::make_unique<Lbfgs>(x);
  if (id == "nelder_mead") return std::make_unique<NelderMead>(x, SimplexParams{1.0, 2.0, 0.5, 0.5}, false);
  if (id == "nelder_mead_adaptive") {
    constexpr double n = 2.0;
    return std::make_unique<NelderMead>(
        x, SimplexParams{1.0, 1.0 + 2.0 / n, 0.75 - 1.0 / (2.0 * n), 1.0 - 1.0 / n}, true);
  }
  throw Error(Errc::UnknownAlgorithm, "unknown optimizer '" + std::string(id) + "'");
}

}  // namespace

OptimizerRun run_optimizer(std::string_view id, const Vec2& start, const OptimizerOptions& opts, std::uint64_t) {
  auto method = make_method(id, start, opts);
  const auto in_box = [&](const Vec2& p) {
    return std::isfinite(p[0]) && std::isfinite(p[1]) && p[0] >= opts.box_lo[0] && p[0] <= opts.box_hi[0] &&
           p[1] >= opts.box_lo[1] && p[1] <= opts.box_hi[1];
  };
  OptimizerRun run;
  run.steps.push_back(Solution::real({start[0], start[1]}));
  if (norm(rosenbrock_grad(start)) < opts.gradient_tolerance) return run;
  for (std::size_t it = 0; it < opts.steps; ++it) {
    const Vec2 x = method->next();
    if (!in_box(x)) {
      run.diverged = true;
      break;
    }
    run.steps.push_back(Solution::real({x[0], x[1]}));
    if (norm(rosenbrock_grad(x)) < opts.gradient_tolerance) break;
  }
  return run;
}

}  // namespace pstraj::zoo
