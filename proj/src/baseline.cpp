#include "autovmd/baseline.hpp"

#include "autovmd/error.hpp"
#include "autovmd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace autovmd {

void validate(const BaselineConfig& c)
{
  auto pos = [](double v) { return v > 0 && std::isfinite(v); };
  require(pos(c.alpha0), ErrorCode::BadConfig, "alpha0 must be positive");
  require(pos(c.beta0), ErrorCode::BadConfig, "beta0 must be positive");
  require(pos(c.theta), ErrorCode::BadConfig, "theta must be positive");
  require(pos(c.gamma), ErrorCode::BadConfig, "gamma must be positive");
  require(pos(c.epsilon) && c.epsilon < 1, ErrorCode::BadConfig, "epsilon must lie in (0, 1)");
  require(c.max_iter >= 1, ErrorCode::BadConfig, "max_iter must be at least 1");
  require(c.feasibility_factor >= 0, ErrorCode::BadConfig, "feasibility_factor must be >= 0");
}

namespace {

void check_lengths(const StencilSet& stencils, std::span<const double> f, const DualState& duals)
{
  const std::size_t n = stencils.grid_count;
  require(f.size() == n, ErrorCode::LengthMismatch, "f length does not match grid");
  require(duals.lambda.size() == n && duals.mu.size() == n, ErrorCode::LengthMismatch,
          "multiplier length does not match grid");
}

std::vector<double> interior_rhs(const BaselineConfig& config, const DualState& duals)
{
  std::vector<double> c(duals.lambda.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = config.beta0 - duals.lambda[i] + duals.mu[i];
  return c;
}

double relative_change(std::span<const double> prev, std::span<const double> next)
{
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double d = next[i] - prev[i];
    num += d * d;
    den += next[i] * next[i];
  }
  if (den == 0.0)
    return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

double linear_terms(std::span<const double> g, const DualState& duals, const BaselineConfig& config,
                    std::span<const double> f, double h)
{
  const std::size_t n = g.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    acc += w * (-config.beta0 * g[i] + duals.lambda[i] * (g[i] - f[i]) - duals.mu[i] * g[i]);
  }
  return acc;
}

// f is its own optimum when it has no discrete curvature: every feasible g
// lies below it and no g has less curvature cost.
bool is_straight(std::span<const double> f)
{
  const double scale = std::max(1.0, *std::max_element(f.begin(), f.end()));
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    if (std::abs(f[i - 1] - 2 * f[i] + f[i + 1]) > 1e-13 * scale)
      return false;
  return true;
}

} // namespace

std::vector<double> primal_solve(const StencilSet& stencils, std::span<const double> f,
                                 const BaselineConfig& config, const DualState& duals)
{
  check_lengths(stencils, f, duals);
  const std::vector<double> alpha(stencils.grid_count, config.alpha0);
  const auto sys = assemble_system(stencils, alpha, interior_rhs(config, duals), f);
  return solve(sys, config.solver);
}

DualState dual_step(const DualState& duals, std::span<const double> g, std::span<const double> f,
                    double theta, double gamma)
{
  const std::size_t n = g.size();
  require(f.size() == n && duals.lambda.size() == n && duals.mu.size() == n,
          ErrorCode::LengthMismatch, "dual_step: length mismatch");
  std::vector<double> gap(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    gap[i] = g[i] - f[i];
    neg[i] = -g[i];
  }
  DualState out = duals;
  kernels::parallel::projected_ascent(out.lambda, gap, theta);
  kernels::parallel::projected_ascent(out.mu, neg, gamma);
  return out;
}

double lagrangian_value(std::span<const double> g, const DualState& duals,
                        const BaselineConfig& config, std::span<const double> f,
                        const StencilSet& stencils)
{
  check_lengths(stencils, f, duals);
  require(g.size() == stencils.grid_count, ErrorCode::LengthMismatch, "g length does not match grid");
  const std::size_t n = g.size();
  const double h = stencils.h;
  const double h2 = h * h;

  std::vector<double> d2(n);
  const auto c2 = unit_stencil(2);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 5; ++j)
      acc += c2[j] * g[i - 2 + j];
    d2[i] = acc / h2;
  }
  auto one_sided0 = [&](auto at) {
    return (35 * at(0) - 104 * at(1) + 114 * at(2) - 56 * at(3) + 11 * at(4)) / (12 * h2);
  };
  auto one_sided1 = [&](auto at) {
    return (11 * at(0) - 20 * at(1) + 6 * at(2) + 4 * at(3) - at(4)) / (12 * h2);
  };
  auto left = [&](std::size_t k) { return g[k]; };
  auto right = [&](std::size_t k) { return g[n - 1 - k]; };
  d2[0] = one_sided0(left);
  d2[1] = one_sided1(left);
  d2[n - 1] = one_sided0(right);
  d2[n - 2] = one_sided1(right);

  double curv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    curv += w * config.alpha0 * d2[i] * d2[i];
  }
  return curv + linear_terms(g, duals, config, f, h);
}

double discrete_lagrangian(std::span<const double> g, const DualState& duals,
                           const BaselineConfig& config, std::span<const double> f,
                           const StencilSet& stencils)
{
  check_lengths(stencils, f, duals);
  require(g.size() == stencils.grid_count, ErrorCode::LengthMismatch, "g length does not match grid");
  const double h = stencils.h;
  const double h2 = h * h;
  double curv = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double d = (g[i - 1] - 2 * g[i] + g[i + 1]) / h2;
    curv += d * d;
  }
  return h * config.alpha0 * curv + linear_terms(g, duals, config, f, h);
}

double feasibility_gap(std::span<const double> g, std::span<const double> f)
{
  require(g.size() == f.size(), ErrorCode::LengthMismatch, "feasibility_gap: length mismatch");
  double gap = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    gap = std::max({gap, g[i] - f[i], -g[i]});
  return gap;
}

BaselineResult find_baseline(std::span<const double> f, const StencilSet& stencils,
                             const BaselineConfig& config)
{
  validate(config);
  const std::size_t n = stencils.grid_count;
  require(f.size() == n, ErrorCode::LengthMismatch, "f length does not match grid");
  for (double v : f)
    require(std::isfinite(v), ErrorCode::NonFinite, "spectrum contains non-finite values");

  const auto t0 = std::chrono::steady_clock::now();
  BaselineResult res;
  res.duals = DualState::zeros(n);
  auto finish = [&] {
    res.feasibility_gap = feasibility_gap(res.g_star, f);
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };

  if (is_straight(f)) {
    res.g_star.assign(f.begin(), f.end());
    res.residual_trace.push_back(0.0);
    res.dual_objective_trace.push_back(discrete_lagrangian(res.g_star, res.duals, config, f, stencils));
    res.converged = true;
    return finish();
  }

  // alpha is constant, so one factorization serves every iteration.
  const std::vector<double> alpha(n, config.alpha0);
  const auto zero_rhs = std::vector<double>(n, 0.0);
  const BvpFactorization lu(assemble_system(stencils, alpha, zero_rhs, f).matrix, config.solver);
  auto primal = [&](const DualState& d) {
    return lu.solve(assemble_rhs(stencils, interior_rhs(config, d), f));
  };

  std::vector<double> g = primal(res.duals);
  res.dual_objective_trace.push_back(discrete_lagrangian(g, res.duals, config, f, stencils));

  while (res.iterations < config.max_iter) {
    res.duals = dual_step(res.duals, g, f, config.theta, config.gamma);
    std::vector<double> next = primal(res.duals);
    ++res.iterations;
    for (double v : next)
      require(std::isfinite(v), ErrorCode::NonFinite,
              "baseline iterate became non-finite at iteration " + std::to_string(res.iterations));

    const double r = relative_change(g, next);
    g = std::move(next);
    res.residual_trace.push_back(r);

    const double obj = discrete_lagrangian(g, res.duals, config, f, stencils);
    const double drop = res.dual_objective_trace.back() - obj;
    if (drop > 1e-9) {
      ++res.monotonicity_violations;
      res.worst_decrease = std::max(res.worst_decrease, drop);
    }
    res.dual_objective_trace.push_back(obj);

    if (r < config.epsilon &&
        (config.feasibility_factor == 0 ||
         feasibility_gap(g, f) <= config.feasibility_factor * config.epsilon)) {
      res.converged = true;
      break;
    }
  }
  res.g_star = std::move(g);
  return finish();
}

} // namespace autovmd
