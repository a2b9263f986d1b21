#pragma once

#include "autovmd/stencils.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace autovmd {

struct BaselineConfig
{
  double alpha0 = 2.75e-4; // curvature weight
  double beta0 = 1.0;      // integral weight
  double theta = 0.12;     // step for the g <= f multiplier
  double gamma = 0.12;     // step for the g >= 0 multiplier
  double epsilon = 1e-4;   // relative L2 change of g
  std::size_t max_iter = 50000;
  //! When > 0, convergence also needs max(g - f, -g) <= feasibility_factor * epsilon.
  double feasibility_factor = 0.0;
  SolverKind solver = SolverKind::Banded;
};

//! Throws BadConfig when a field is out of range.
void validate(const BaselineConfig& config);

struct DualState
{
  std::vector<double> lambda; // g <= f
  std::vector<double> mu;     // g >= 0

  static DualState zeros(std::size_t n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}; }
};

struct BaselineResult
{
  std::vector<double> g_star;
  DualState duals;
  std::size_t iterations = 0;
  std::vector<double> residual_trace;
  std::vector<double> dual_objective_trace;
  bool converged = false;
  //! max(g - f, -g, 0) over all nodes at the returned iterate.
  double feasibility_gap = 0.0;
  //! Steps where the dual objective fell by more than 1e-9.
  std::size_t monotonicity_violations = 0;
  double worst_decrease = 0.0;
  double wall_seconds = 0.0;
};

//! Minimizer of the Lagrangian for fixed multipliers: solves the fourth-order
//! boundary value problem with interior rhs beta - lambda + mu.
std::vector<double> primal_solve(const StencilSet& stencils, std::span<const double> f,
                                 const BaselineConfig& config, const DualState& duals);

//! lambda <- max(0, lambda + theta (g - f)), mu <- max(0, mu - gamma g).
DualState dual_step(const DualState& duals, std::span<const double> g, std::span<const double> f,
                    double theta, double gamma);

//! Trapezoidal quadrature of the Lagrangian on the grid. g'' uses the
//! five-point stencil at nodes 2 .. N-2 and one-sided five-point formulas at
//! nodes 0, 1, N-1, N.
double lagrangian_value(std::span<const double> g, const DualState& duals,
                        const BaselineConfig& config, std::span<const double> f,
                        const StencilSet& stencils);

//! The discrete objective whose exact minimizer primal_solve returns:
//! h sum_{i=1}^{N-1} alpha (delta^2 g_i / h^2)^2 plus trapezoid-weighted
//! linear terms. Its value at the primal minimizer is the dual function.
double discrete_lagrangian(std::span<const double> g, const DualState& duals,
                           const BaselineConfig& config, std::span<const double> f,
                           const StencilSet& stencils);

//! Dual ascent until the relative change of g drops below epsilon. Throws
//! NonFinite if an iterate blows up; returns converged = false when the
//! iteration budget runs out.
BaselineResult find_baseline(std::span<const double> f, const StencilSet& stencils,
                             const BaselineConfig& config);

//! max(g - f, -g, 0) in the infinity norm.
double feasibility_gap(std::span<const double> g, std::span<const double> f);

} // namespace autovmd
