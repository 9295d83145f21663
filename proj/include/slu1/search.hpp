#pragma once

#include "slu1/solver.hpp"
#include "slu1/zeros.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slu1 {

struct StationaryPoint {
  double theta = 0;
  int order = 1;  ///< multiplicity: first k with d^(k+1) phi != 0
};

struct StationaryCount {
  int total = 0;  ///< counted with multiplicity
  std::vector<StationaryPoint> points;
};

/// Zeros of d phi/d theta on [0, 2 pi) with multiplicity (Fourier data).
StationaryCount stationary_points(const BoundaryData& phi);

/// Same for psi + sum_j (alpha_j cos j theta + beta_j sin j theta), with
/// alphas[j-1], betas[j-1]; asserts the 2n bound when psi is zero.
StationaryCount stationary_points(const std::vector<double>& alphas, const std::vector<double>& betas,
                                  const BoundaryData* psi = nullptr);

/// Shipped budget constants K_n for n <= 4 (calibrated by
/// calibrate_budget_constant with its default arguments).
double budget_constant(int n);

/// Doubling scan: smallest K = 2^-40 * 2^m such that every random sample
/// psi + (alpha, beta) with sum(alpha^2 + beta^2) in {1, 2, 4} * K ||psi||^2
/// (spectral C^{2n} norm) has at most 2n stationary points.
double calibrate_budget_constant(int n, int samples = 1000, std::uint64_t seed = 1);

/// Guaranteed multiplicity of p2 - p3 when p1 - p2 and p1 - p3 have
/// multiplicities k and l at the same point.
int min_multiplicity_compose(int k, int l);

struct LeadingCoefficient {
  std::complex<double> C;
  double residual = 0;   ///< rms fit residual
  double lambda = 0;
  double rho = 0;
  double threshold = 0;  ///< 1e-6 * max |lambda x + i y|^k on the fit circle
  bool vanishes() const { return std::abs(C) < threshold; }
};

/// Least-squares fit of lambda (u - u_hat) + i (v - v_hat) by a complex
/// polynomial of degree k + 1 in (w, conj w), w = lambda x + i y, sampled on
/// rings of radius <= rho about `center`; C is the coefficient of w^k.
/// lambda = sqrt(2) (v(center)^2 + c^2 + a^2)^(1/4). Checked stable under
/// rho -> rho/2 to 10% unless `check` is false.
LeadingCoefficient leading_coefficient(const SolutionPair& pair, const SolutionPair& pair_hat, int k, double rho,
                                       Eigen::Vector2d center = {0, 0}, bool check = true);

struct SearchProblem {
  DomainPtr domain;
  int n = 1;
  std::vector<double> gamma;  ///< target data sum_j gamma_j sin j theta; empty means zero
  BoundaryData psi;           ///< Fourier background
  double a = 0.5;
  SolverOptions opts;
  double root_tol = 1e-12;          ///< coefficient tolerance of the root finders
  double coef_cauchy_tol = 5e-3;    ///< final coefficient increment along the a-schedule
  double budget_K = 0;              ///< 0: budget_constant(n)

  void validate() const;
  /// Cos-only psi and zero gamma: beta_j = 0 and the fields have the
  /// symmetry u(x,-y) = -u(x,y), v(x,-y) = v(x,y).
  bool symmetric() const;
};

struct StageCoefficients {
  double a = 0;
  std::vector<double> alphas, betas;
  double increment = 0;  ///< max change from the previous stage
};

struct SearchResult {
  std::vector<double> alphas, betas;
  int certified_multiplicity = 0;   ///< winding of (u,v) - (u_hat,v_hat) about (0,0)
  double probe_radius = 0;
  int reflected_multiplicity = 0;   ///< winding of (u,v) - (u',v'), u' = u(x,-y), v' = -v(x,-y)
  std::vector<double> C_levels;     ///< |C| of the level functional, levels 1..n
  std::vector<double> C_thresholds;
  double C_next = 0;                ///< |C_n| of the fit at the final coefficients
  double budget_used = 0, budget_limit = 0;
  bool symmetric = false;
  int solves = 0;
  std::vector<std::string> provenance;
  std::vector<StageCoefficients> trace;
  SolutionPair pair, pair_hat;

  // a = 0 only
  std::optional<SingularityScan> singularities;
  bool symmetric_alternative = false;  ///< u(x,-y) = u, v(x,-y) = -v instead of an isolated singularity
};

/// Nested level search at a != 0.
SearchResult search(const SearchProblem& problem);

/// Search along problem.opts.schedule, Cauchy test on the coefficients, and
/// certification of the continuation-limit pair at (0,0).
SearchResult search_limit_a0(const SearchProblem& problem);

} // namespace slu1
