#pragma once

#include "slu1/boundary.hpp"
#include "slu1/exact.hpp"
#include "slu1/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slu1 {

enum class Provenance { direct_solve, continuation_limit, exact_model };
std::string to_string(Provenance p);

enum class SolvePath { potential, v_equation };

struct SolverOptions {
  /// Newton stops when the diagonally scaled residual |R_k / J_kk| is below this.
  double tolerance = 1e-10;
  int max_iterations = 60;
  /// Line search: step factors 1, damping, damping^2, ... down to min_step.
  double damping = 0.5;
  double min_step = 1.0 / 1024;
  /// Coefficient floor: a_eff = max(a, eps_reg) in (v^2 + y^2 + a^2)^(-1/2).
  double eps_reg = 1e-4;
  /// Continuation schedule for a, strictly decreasing.
  std::vector<double> schedule = default_schedule();
  /// Bound on the final C0 increment of (u,v) along the schedule.
  double cauchy_tolerance = 1e-3;
  SolvePath path = SolvePath::potential;

  static std::vector<double> default_schedule();
  void validate() const;
};

struct StageLog {
  double a = 0;
  int iterations = 0;
  double final_residual = 0;
  double c0_increment = 0;  ///< sup |(u,v) - previous stage|, 0 for the first
};

struct SolutionPair {
  double a = 0;
  GridField u, v;
  std::optional<GridField> f;
  Provenance provenance = Provenance::direct_solve;
  std::vector<StageLog> log;
  double path_discrepancy = 0;  ///< solve_v only: max over two staircase paths

  const DomainPtr& domain() const { return u.domain; }
};

/// Thrown when Newton fails; carries the iterate log.
class NewtonDivergence : public std::runtime_error {
public:
  NewtonDivergence(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals(std::move(residuals)) {}
  std::vector<double> residuals;
};

/// Dirichlet problem for the potential equation in divergence form,
///   d/dx asinh(f_x / sqrt(y^2 + a^2)) + 2 f_yy = 0,  f = phi on the boundary.
/// `initial` (nodal values) warm-starts Newton.
SolutionPair solve_potential(const DomainPtr& d, const BoundaryData& phi, double a,
                             const SolverOptions& opts, const Eigen::VectorXd* initial = nullptr);

/// Dirichlet problem for the v-equation
///   d/dx[(v^2+y^2+a^2)^(-1/2) v_x] + 2 v_yy = 0,  v = phi on the boundary,
/// with u recovered by staircase path integration and u(basepoint) = 0.
SolutionPair solve_v(const DomainPtr& d, const BoundaryData& phi, double a, Eigen::Vector2d basepoint,
                     const SolverOptions& opts, const Eigen::VectorXd* initial = nullptr);

/// Continuation along opts.schedule, warm-starting every stage; the returned
/// pair has a = 0 and provenance continuation_limit. `initial` seeds the
/// first stage.
SolutionPair continuation_to_zero(const DomainPtr& d, const BoundaryData& phi, const SolverOptions& opts,
                                  const Eigen::VectorXd* initial = nullptr);

/// Raw nodal residuals of the discrete equations (unknown-node values only).
Eigen::VectorXd potential_residual(const DomainPtr& d, const BoundaryData& phi, double a,
                                   const Eigen::VectorXd& f, double eps_reg = 0.0);

struct PdeResidual {
  GridField r1, r2;
  std::vector<char> mask;  ///< 1 where the node is excluded (singular band, no stencil)
  double max_unmasked = 0;
  double max_masked = 0;
};

/// r1 = u_x - v_y, r2 = v_x + 2 (v^2+y^2+a^2)^(1/2) u_y with grid stencils.
/// Nodes within `band` of the axis (a = 0 only) and boundary-layer nodes
/// lacking cut values are masked.
PdeResidual pde_residual(const SolutionPair& pair, double band = -1.0);

/// Samples an exact model on the grid (values at nodes, cuts and boundary).
SolutionPair sample_pair(const DomainPtr& d, const ExactSolutionId& id);

/// Result of the discrete maximum-principle check.
struct MaxPrincipleReport {
  double excess_u = 0, excess_v = 0;    ///< interior extremum beyond layer extremum
  double allowance_u = 0, allowance_v = 0;
  bool ok() const { return excess_u <= allowance_u && excess_v <= allowance_v; }
};
/// Compares interior (non-layer) extrema against boundary-layer extrema with
/// allowance 5 h^2 (second-derivative scale).
MaxPrincipleReport check_max_principle(const SolutionPair& pair);

} // namespace slu1
