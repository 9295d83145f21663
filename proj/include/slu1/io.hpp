#pragma once

#include "slu1/cone.hpp"
#include "slu1/fibration.hpp"
#include "slu1/search.hpp"
#include "slu1/solver.hpp"
#include "slu1/zeros.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace slu1 {

using Json = nlohmann::ordered_json;

/// Boundary data from JSON. Accepted forms:
///   {"fourier": {"a0": .., "cos": [..], "sin": [..]}}
///   {"a0": .., "cos": [..], "sin": [..]}      (cos[j], sin[j] multiply mode j)
///   {"samples": [..]}                          (uniform in theta)
BoundaryData parse_boundary(const Json& j);
Json to_json(const BoundaryData& b);

/// Solve configuration
///   {domain:{kind,n,m}, boundary, a, schedule:[..], tol, max_iter, path}.
struct SolveConfig {
  DomainKind kind = DomainKind::unit_disc;
  int n = 65, m = 256;
  BoundaryData boundary;
  double a = 1.0;
  SolverOptions opts;

  static SolveConfig from_json(const Json& j);
  Json to_json() const;
  DomainPtr build() const;
};

/// {provenance, a, stages:[{stage_a, iterations, final_residual, c0_increment}]}.
Json convergence_log(const SolutionPair& p);

/// {boundary_winding, zeroes:[{x, y, multiplicity, singular, type?}], whole_axis_singular}.
Json zero_report_json(const ZeroReport& r, const SingularityScan* scan = nullptr);
Json singularity_json(const SingularityScan& scan);
Json search_result_json(const SearchResult& r);

struct FibrationCertificate {
  int pairs_tested = 0;
  double min_separation = INFINITY;
  bool winding_zero = true;
  std::vector<std::pair<FibreParams, FibreParams>> pairs;
};
Json to_json(const FibrationCertificate& c);

/// CSV "A,T,Phi,drift".
void write_phi_table(std::ostream& os, const std::vector<double>& A, const std::vector<PhiResult>& phi,
                     const std::vector<double>& drift);
/// CSV "t,w,alpha,beta".
void write_trajectory(std::ostream& os, const ConeTrajectory& tr);

/// Deterministic text form: two-space indent, trailing newline.
std::string dump(const Json& j);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

} // namespace slu1
