// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// criterion 11 reruns 1-10 and compares their artifacts byte for byte.

#include "slu1/cli.hpp"
#include "slu1/cone.hpp"
#include "slu1/embed.hpp"
#include "slu1/error.hpp"
#include "slu1/fibration.hpp"
#include "slu1/io.hpp"
#include "slu1/search.hpp"
#include "slu1/zeros.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace slu1;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string artifact;  // deterministic record of every computed number
};

// Artifact builder: one "key value" line per number, 17 significant digits.
class Record {
public:
  void put(const std::string& key, double v) { os_ << key << ' ' << format_double(v) << '\n'; }
  void put(const std::string& key, const std::string& v) { os_ << key << ' ' << v << '\n'; }
  std::string str() const { return os_.str(); }

private:
  std::ostringstream os_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Uniform on [-1, 1) from raw mt19937_64 output (portable across libraries).
struct Uniform {
  std::mt19937_64 rng;
  explicit Uniform(std::uint64_t seed) : rng(seed) {}
  double operator()() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
};

BoundaryData random_fourier(Uniform& U, int modes) {
  std::vector<double> c(modes + 1, 0.0), s(modes + 1, 0.0);
  c[0] = U();
  for (int j = 1; j <= modes; ++j) {
    c[j] = U();
    s[j] = U();
  }
  return BoundaryData::fourier(0.0, c, s);
}

// 1. Axis formulas of the Harvey-Lawson family.
Outcome c1() {
  Record rec;
  double worst = 0;
  for (double a : {0.0, 0.1, 1.0, 5.0})
    for (int i = 0; i < 40; ++i) {
      const double t = -1.0 + 2.0 * (i + 0.5) / 40;
      const double u_ref = -t / std::sqrt(a + std::sqrt(t * t + a * a));
      const double v_ref = t * std::sqrt(t * t + 2 * a);
      const double u = harvey_lawson_uv(a, 0.0, t).u, v = harvey_lawson_uv(a, t, 0.0).v;
      worst = std::max({worst, std::abs(u - u_ref), std::abs(v - v_ref)});
      rec.put("u", u);
      rec.put("v", v);
    }
  return {worst <= 1e-10, fmt("max axis error %.2e", worst), rec.str()};
}

// 2. Residual convergence order of sampled exact models. Both grids are
// compared on the coarse nodes (every other fine node) off the coarse mask,
// so the measured points and the excluded axis band are the same.
Outcome c2() {
  Record rec;
  struct Case {
    const char* name;
    ExactSolutionId id;
  };
  std::vector<Case> cases = {{"harvey-lawson a=0", ExactSolutionId::harvey_lawson(0.0)},
                             {"harvey-lawson a=0.1", ExactSolutionId::harvey_lawson(0.1)},
                             {"harvey-lawson a=1", ExactSolutionId::harvey_lawson(1.0)},
                             {"two-sheet", ExactSolutionId::two_sheet()}};
  auto coarse = build_domain(DomainKind::unit_disc, 65, 256);
  auto fine = build_domain(DomainKind::unit_disc, 129, 512);
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    PdeResidual rc = pde_residual(sample_pair(coarse, c.id));
    PdeResidual rf = pde_residual(sample_pair(fine, c.id), 2 * coarse->h);
    double r[2] = {0, 0};
    for (int k = 0; k < coarse->size(); ++k) {
      const int kf = fine->index(2 * coarse->col(k), 2 * coarse->row(k));
      if (rc.mask[k] || rf.mask[kf]) continue;
      r[0] = std::max({r[0], std::abs(rc.r1[k]), std::abs(rc.r2[k])});
      r[1] = std::max({r[1], std::abs(rf.r1[kf]), std::abs(rf.r2[kf])});
    }
    const double order = std::log2(r[0] / r[1]);
    ok = ok && order >= 1.9;
    rec.put(std::string(c.name) + " r65", r[0]);
    rec.put(std::string(c.name) + " r129", r[1]);
    detail += std::string(detail.empty() ? "" : ", ") + c.name + fmt(" order %.2f", order);
  }
  return {ok, detail, rec.str()};
}

// 3. Discrete maximum principle on random data.
Outcome c3() {
  Record rec;
  Uniform U(3);
  auto d = build_domain(DomainKind::unit_disc, 65, 256);
  int bad = 0, runs = 0;
  double worst = 0;
  for (int s = 0; s < 20; ++s) {
    BoundaryData phi = random_fourier(U, 4);
    Eigen::VectorXd warm;
    for (double a : {1.0, 0.1}) {
      SolutionPair p = solve_potential(d, phi, a, SolverOptions{}, warm.size() ? &warm : nullptr);
      warm = p.f->values;
      MaxPrincipleReport m = check_max_principle(p);
      ++runs;
      bad += !m.ok();
      worst = std::max({worst, m.excess_u / std::max(m.allowance_u, 1e-300), m.excess_v / std::max(m.allowance_v, 1e-300)});
      rec.put("excess_u", m.excess_u);
      rec.put("excess_v", m.excess_v);
    }
  }
  return {bad == 0, fmt("%.0f/%.0f solves within allowance, worst excess/allowance %.3f", runs - bad, runs, worst),
          rec.str()};
}

// 4. Counting formulae on random pairs at a = 1/2.
Outcome c4() {
  Record rec;
  Uniform U(4);
  auto d = build_domain(DomainKind::unit_disc, 65, 256);
  int violations = 0;
  std::string counts;
  for (int s = 0; s < 10; ++s) {
    BoundaryData p1 = random_fourier(U, 3), p2 = random_fourier(U, 3);
    SolutionPair a = solve_potential(d, p1, 0.5, SolverOptions{}), b = solve_potential(d, p2, 0.5, SolverOptions{});
    ZeroReport r = verify_count(a, b);
    const int l = count_boundary_extrema(p1 - p2);
    const int sum = r.total_multiplicity();
    violations += (r.boundary_winding != sum) + (sum > l - 1);
    counts += fmt("%.0f/%.0f ", sum, l);
    rec.put("winding", r.boundary_winding);
    rec.put("sum", sum);
    rec.put("l", l);
    for (const auto& z : r.zeroes) {
      rec.put("zx", z.x);
      rec.put("zy", z.y);
    }
  }
  return {violations == 0, fmt("%.0f violations; sum/l: ", violations) + counts, rec.str()};
}

// 5. Rotation angle of the cone system.
Outcome c5() {
  Record rec;
  const double p02 = compute_phi(0.02).phi, p98 = compute_phi(0.98).phi;
  bool ok = std::abs(p02 + M_PI) < 0.05 && std::abs(p98 + 2 * M_PI / std::sqrt(3.0)) < 0.05;
  double prev = INFINITY, drift = 0, odd = 0;
  bool mono = true;
  for (int i = 1; i <= 19; ++i) {
    const double A = 0.05 * i;
    const double phi = compute_phi(A).phi;
    mono = mono && phi < prev;
    prev = phi;
    drift = std::max(drift, integrate_cone(A, 256).drift);
    odd = std::max(odd, std::abs(compute_phi(-A).phi + phi));
    rec.put("phi", phi);
  }
  rec.put("phi(0.02)", p02);
  rec.put("phi(0.98)", p98);
  ok = ok && mono && drift <= 1e-8 && odd <= 1e-8;
  return {ok,
          fmt("Phi(0.02)=%.6f Phi(0.98)=%.6f drift %.1e", p02, p98, drift) + (mono ? ", decreasing" : ", NOT decreasing") +
              fmt(", odd to %.1e", odd),
          rec.str()};
}

// 6. Area and density of the T2-cone.
Outcome c6() {
  Record rec;
  const double area = t2_cone_area(), dens = t2_cone_density();
  rec.put("area", area);
  rec.put("density", dens);
  const bool ok = std::abs(area - 4 * M_PI * M_PI / std::sqrt(3.0)) <= 1e-12 && std::abs(dens - 1.8138) < 5e-5 &&
                  std::abs(dens - M_PI / std::sqrt(3.0)) <= 1e-12;
  return {ok, fmt("area %.12f density %.6f", area, dens), rec.str()};
}

// 7. Odd data: odd potential, whole-axis singular, fixed curve in the mesh.
Outcome c7() {
  Record rec;
  auto d = build_domain(DomainKind::unit_disc, 65, 256);
  SolverOptions o;
  SolutionPair p = continuation_to_zero(d, BoundaryData::fourier(0.0, {}, {0, 0.5, 0.2, 0.1}), o);
  double sym = 0;
  for (int k = 0; k < d->size(); ++k) sym = std::max(sym, std::abs((*p.f)[k] + (*p.f)[d->mirror(k)]));
  SingularityScan s = find_singularities(p);
  EmbeddedMesh m = embed(p, 32);
  int axis_nodes = 0, on_axis = 0;
  for (int k = 0; k < d->size(); ++k) axis_nodes += d->y(k) == 0.0;
  for (const auto& src : m.sources) on_axis += src.collapsed && src.y == 0.0;
  rec.put("sym", sym);
  rec.put("fixed", m.fixed_points());
  std::ostringstream obj;
  write_obj(obj, m, Projection::z1_z3re);
  rec.put("obj_fnv1a", hex64(fnv1a(obj.str())));
  const bool ok = o.schedule.back() == 0x1.0p-13 && sym <= o.tolerance && s.whole_axis_singular &&
                  m.fixed_points() == axis_nodes && on_axis == axis_nodes;
  return {ok,
          fmt("|f(x,y)+f(x,-y)| %.1e", sym) + (s.whole_axis_singular ? ", whole axis singular" : ", axis NOT singular") +
              fmt(", fixed vertices %.0f of %.0f axis nodes", m.fixed_points(), axis_nodes),
          rec.str()};
}

// 8. Comparison principle for v at a = 0.
Outcome c8() {
  Record rec;
  auto d = build_domain(DomainKind::unit_disc, 65, 256);
  SolverOptions o;
  o.path = SolvePath::v_equation;
  BoundaryData lo = BoundaryData::fourier(0.4, {0, 0.3, 0.2}, {0, 0.25, 0, 0.1});
  BoundaryData hi = lo + BoundaryData::fourier(0.1, {});
  SolutionPair p = continuation_to_zero(d, lo, o), q = continuation_to_zero(d, hi, o);
  double gap = INFINITY;
  for (int k = 0; k < d->size(); ++k) {
    gap = std::min(gap, q.v[k] - p.v[k]);
    rec.put("dv", q.v[k] - p.v[k]);
  }
  return {gap > 0, fmt("min interior v' - v = %.3e", gap), rec.str()};
}

// 9. Fibration: affine fibres, disjoint pairs, inversion.
Outcome c9() {
  Record rec;
  auto d = build_domain(DomainKind::unit_disc, 65, 256);
  FibrationFamily flat(d, BoundaryData::zero());
  double affine = 0;
  for (FibreParams p : {FibreParams(0.5, 0.3, -0.2), FibreParams(0.0, -0.7, 0.4), FibreParams(-1.0, 1.5, 2.0)}) {
    auto s = flat.solve_fibre(p);
    for (int k = 0; k < d->size(); ++k) affine = std::max({affine, std::abs(s->u[k] - p[2]), std::abs(s->v[k] - p[1])});
  }
  rec.put("affine", affine);

  FibrationFamily fam(d, BoundaryData::fourier(0, {0, 0, 0.3, 0.1}, {0, 0, 0.2}));
  Uniform U(9);
  std::vector<std::pair<FibreParams, FibreParams>> pairs;
  std::vector<FibreParams> all;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.5 + 0.4 * U();
    pairs.push_back({FibreParams(a, U(), U()), FibreParams(a, U(), U())});
    all.push_back(pairs.back().first);
    all.push_back(pairs.back().second);
  }
  fam.solve_all(all, thread_cap());
  int disjoint = 0;
  double sep = INFINITY;
  for (const auto& [p, q] : pairs) {
    DisjointCertificate c = verify_disjoint(fam, p, q);
    disjoint += c.ok();
    sep = std::min(sep, c.min_separation);
    rec.put("sep", c.min_separation);
  }
  double inv = 0;
  for (int i = 0; i < 6; ++i) {
    FibreParams p(i == 5 ? -0.4 : 0.2 + 0.15 * (U() + 1), U(), U());
    C3 z = fibre_point(fam, p, 0.4 * U(), 0.4 * U(), M_PI * U());
    FibreParams r = invert_point(fam, z);
    inv = std::max(inv, (r - p).cwiseAbs().maxCoeff());
    rec.put("inv", (r - p).cwiseAbs().maxCoeff());
  }
  const bool ok = affine <= 1e-12 && disjoint == 20 && inv <= 1e-6;
  return {ok,
          fmt("affine error %.1e, %.0f/20 pairs disjoint", affine, disjoint) + fmt(" (min separation %.3f), inversion error %.1e", sep, inv),
          rec.str()};
}

// 10. Limit search for n = 1, 2 with psi = 0.2 cos((n+1) theta).
Outcome c10() {
  Record rec;
  bool ok = true;
  std::string detail;
  for (int n : {1, 2}) {
    SearchProblem P;
    P.domain = build_domain(DomainKind::unit_disc, 65, 256);
    P.n = n;
    std::vector<double> c(n + 2, 0.0);
    c[n + 1] = 0.2;
    P.psi = BoundaryData::fourier(0.0, c);
    SearchResult r = search_limit_a0(P);
    const auto& pts = r.singularities->points;
    const bool single = !r.singularities->whole_axis_singular && pts.size() == 1;
    const SingularityReport* s = single ? &pts[0] : nullptr;
    const bool good = s && std::abs(s->b) <= P.domain->h && s->multiplicity == n && s->parity_ok();
    ok = ok && good;
    if (!detail.empty()) detail += "; ";
    detail += fmt("n=%.0f: %.0f singular point(s)", n, pts.size());
    if (s)
      detail += fmt(" at b=%.1e, multiplicity %.0f ", s->b, s->multiplicity) + to_string(s->type) +
                (s->parity_ok() ? " (parity ok)" : " (parity mismatch)");
    rec.put("search", dump(search_result_json(r)));
  }
  return {ok, detail, rec.str()};
}

using Criterion = std::function<Outcome()>;

struct Entry {
  const char* title;
  Criterion run;
};

std::vector<Entry> criteria() {
  return {{"Harvey-Lawson axis formulas", c1},
          {"residual oracle convergence order", c2},
          {"maximum principle on random data", c3},
          {"counting formulae on random pairs", c4},
          {"cone rotation angle", c5},
          {"T2-cone area and density", c6},
          {"odd data symmetry suite", c7},
          {"comparison principle at a = 0", c8},
          {"fibration", c9},
          {"multiplicity search at a = 0", c10}};
}

std::string cli_artifacts(const fs::path& dir) {
  // One CLI run per rerun: the manifest lists the artifact hashes.
  fs::remove_all(dir);
  int rc = run_cli({"--out", dir.string(), "solve", "--boundary", R"({"cos":[0,0.4,0.2],"sin":[0,0,0.3]})", "--a", "0",
                    "--n", "33", "--m", "128"});
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  std::ostringstream os;
  os << "rc " << rc << '\n' << in.rdbuf();
  return os.str();
}

} // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / "slu1_acceptance";
  auto list = criteria();
  std::vector<std::string> first(list.size());
  int failures = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = list[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), "exception\n"};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    first[i] = o.artifact;
    failures += !o.pass;
    std::printf("%s criterion %zu: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, list[i].title, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }

  // 11: rerun everything and compare artifacts byte for byte
  auto t0 = std::chrono::steady_clock::now();
  int differing = 0;
  std::string which;
  for (size_t i = 0; i < list.size(); ++i) {
    std::string again;
    try {
      again = list[i].run().artifact;
    } catch (const std::exception&) {
      again = "exception\n";
    }
    if (again != first[i]) {
      ++differing;
      which += " " + std::to_string(i + 1);
    }
  }
  const bool cli_same = cli_artifacts(root / "run1") == cli_artifacts(root / "run2");
  const bool det = differing == 0 && cli_same;
  failures += !det;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion 11: determinism: %s [%.1f s]\n", det ? "PASS" : "FAIL",
              det ? "criteria 1-10 and CLI artifacts byte-identical on rerun"
                  : (("artifacts differ:" + which) + (cli_same ? "" : " cli")).c_str(),
              secs);
  return failures == 0 ? 0 : 1;
}
