#include "slu1/io.hpp"
#include "slu1/error.hpp"

#include <cstdio>
#include <ostream>

namespace slu1 {

namespace {

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ValidationError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw ValidationError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw ValidationError("unknown key '" + it.key() + "' in " + where);
  }
}

} // namespace

BoundaryData parse_boundary(const Json& j) {
  if (!j.is_object()) throw ValidationError("boundary must be a JSON object");
  if (j.contains("fourier")) {
    only_keys(j, {"fourier"}, "boundary");
    return parse_boundary(j["fourier"]);
  }
  if (j.contains("samples")) {
    only_keys(j, {"samples"}, "boundary");
    return BoundaryData::sampled(numbers(j["samples"], "samples"));
  }
  only_keys(j, {"a0", "cos", "sin"}, "boundary");
  std::vector<double> c = j.contains("cos") ? numbers(j["cos"], "cos") : std::vector<double>{};
  std::vector<double> s = j.contains("sin") ? numbers(j["sin"], "sin") : std::vector<double>{};
  return BoundaryData::fourier(number(j, "a0", 0.0), c, s);
}

Json to_json(const BoundaryData& b) {
  if (b.kind() == BoundaryData::Kind::sampled) return Json{{"samples", b.samples()}};
  const int J = b.max_mode();
  std::vector<double> c(J + 1, 0.0), s(J + 1, 0.0);
  for (int j = 1; j <= J; ++j) {
    c[j] = b.cos_coef(j);
    s[j] = b.sin_coef(j);
  }
  return Json{{"fourier", {{"a0", b.a0()}, {"cos", c}, {"sin", s}}}};
}

SolveConfig SolveConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  only_keys(j, {"domain", "boundary", "a", "schedule", "tol", "max_iter", "path"}, "config");
  SolveConfig c;
  if (j.contains("domain")) {
    const Json& d = j["domain"];
    if (!d.is_object()) throw ValidationError("domain must be an object");
    only_keys(d, {"kind", "n", "m"}, "domain");
    if (d.contains("kind")) c.kind = parse_domain_kind(d["kind"].get<std::string>());
    c.n = static_cast<int>(number(d, "n", c.n));
    c.m = static_cast<int>(number(d, "m", c.m));
  }
  if (!j.contains("boundary")) throw ValidationError("config needs a boundary");
  c.boundary = parse_boundary(j["boundary"]);
  c.a = number(j, "a", c.a);
  if (j.contains("schedule")) c.opts.schedule = numbers(j["schedule"], "schedule");
  c.opts.tolerance = number(j, "tol", c.opts.tolerance);
  c.opts.max_iterations = static_cast<int>(number(j, "max_iter", c.opts.max_iterations));
  if (j.contains("path")) {
    std::string p = j["path"].get<std::string>();
    if (p == "potential") c.opts.path = SolvePath::potential;
    else if (p == "v") c.opts.path = SolvePath::v_equation;
    else throw ValidationError("path must be 'potential' or 'v'");
  }
  c.opts.validate();
  return c;
}

Json SolveConfig::to_json() const {
  return Json{{"domain", {{"kind", to_string(kind)}, {"n", n}, {"m", m}}},
              {"boundary", slu1::to_json(boundary)},
              {"a", a},
              {"schedule", opts.schedule},
              {"tol", opts.tolerance},
              {"max_iter", opts.max_iterations},
              {"path", opts.path == SolvePath::potential ? "potential" : "v"}};
}

DomainPtr SolveConfig::build() const { return build_domain(kind, n, m); }

Json convergence_log(const SolutionPair& p) {
  Json stages = Json::array();
  for (const auto& s : p.log)
    stages.push_back({{"stage_a", s.a},
                      {"iterations", s.iterations},
                      {"final_residual", s.final_residual},
                      {"c0_increment", s.c0_increment}});
  return Json{{"provenance", to_string(p.provenance)}, {"a", p.a}, {"stages", stages}};
}

Json singularity_json(const SingularityScan& scan) {
  Json pts = Json::array();
  for (const auto& s : scan.points)
    pts.push_back({{"b", s.b},
                   {"multiplicity", s.multiplicity},
                   {"type", to_string(s.type)},
                   {"probe_radius", s.probe_radius},
                   {"tangent_cone", to_string(s.cone)},
                   {"parity_ok", s.parity_ok()}});
  return Json{{"whole_axis_singular", scan.whole_axis_singular}, {"points", pts}};
}

Json zero_report_json(const ZeroReport& r, const SingularityScan* scan) {
  Json zs = Json::array();
  for (const auto& z : r.zeroes) {
    Json e{{"x", z.x}, {"y", z.y}, {"multiplicity", z.multiplicity}, {"singular", z.singular}};
    if (z.singular && scan)
      for (const auto& s : scan->points)
        if (std::abs(s.b - z.x) <= 2 * (s.probe_radius > 0 ? s.probe_radius : 1e-12)) e["type"] = to_string(s.type);
    zs.push_back(e);
  }
  return Json{{"boundary_winding", r.boundary_winding},
              {"total_multiplicity", r.total_multiplicity()},
              {"zeroes", zs},
              {"whole_axis_singular", scan ? scan->whole_axis_singular : false}};
}

Json search_result_json(const SearchResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"a", s.a}, {"alphas", s.alphas}, {"betas", s.betas}, {"increment", s.increment}});
  Json j{{"alphas", r.alphas},
         {"betas", r.betas},
         {"certified_multiplicity", r.certified_multiplicity},
         {"reflected_multiplicity", r.reflected_multiplicity},
         {"probe_radius", r.probe_radius},
         {"C_levels", r.C_levels},
         {"C_thresholds", r.C_thresholds},
         {"C_next", r.C_next},
         {"budget_used", r.budget_used},
         {"budget_limit", r.budget_limit},
         {"symmetric", r.symmetric},
         {"solves", r.solves},
         {"provenance", r.provenance},
         {"trace", trace}};
  if (r.singularities) j["singularities"] = singularity_json(*r.singularities);
  j["symmetric_alternative"] = r.symmetric_alternative;
  return j;
}

Json to_json(const FibrationCertificate& c) {
  Json pairs = Json::array();
  for (const auto& [p, q] : c.pairs)
    pairs.push_back({std::vector<double>{p[0], p[1], p[2]}, std::vector<double>{q[0], q[1], q[2]}});
  return Json{{"pairs_tested", c.pairs_tested},
              {"min_separation", c.min_separation},
              {"winding_zero", c.winding_zero},
              {"pairs", pairs}};
}

void write_phi_table(std::ostream& os, const std::vector<double>& A, const std::vector<PhiResult>& phi,
                     const std::vector<double>& drift) {
  os << "A,T,Phi,drift\n";
  for (size_t i = 0; i < A.size(); ++i)
    os << format_double(A[i]) << ',' << format_double(phi[i].T) << ',' << format_double(phi[i].phi) << ','
       << format_double(drift[i]) << '\n';
}

void write_trajectory(std::ostream& os, const ConeTrajectory& tr) {
  os << "t,w,alpha,beta\n";
  for (const auto& s : tr.samples)
    os << format_double(s.t) << ',' << format_double(s.w) << ',' << format_double(s.alpha) << ','
       << format_double(s.beta) << '\n';
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

} // namespace slu1
