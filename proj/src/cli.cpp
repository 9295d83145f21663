#include "slu1/cli.hpp"
#include "slu1/cone.hpp"
#include "slu1/embed.hpp"
#include "slu1/error.hpp"
#include "slu1/fibration.hpp"
#include "slu1/io.hpp"
#include "slu1/search.hpp"
#include "slu1/zeros.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace slu1 {

namespace fs = std::filesystem;

int thread_cap() {
  const char* s = std::getenv("SL_U1_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end || v < 1 || v > 1024) throw ValidationError("SL_U1_THREADS must be a positive integer");
  return static_cast<int>(v);
}

namespace {

Json parse_json_text(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad number '") + tok + "' in " + what);
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + " is empty");
  return out;
}

// Collects artifacts and writes them with the manifest.
class Output {
public:
  Output(std::string dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {}
  void add(const std::string& name, std::string content) { files_.push_back({name, std::move(content)}); }
  void set_config(Json c) { config_ = std::move(c); }
  void set_summary(Json s) { summary_ = std::move(s); }

  void write() const {
    fs::create_directories(dir_);
    Json arts = Json::array();
    for (const auto& [name, text] : files_) {
      std::ofstream out(fs::path(dir_) / name, std::ios::binary);
      if (!out) throw ValidationError("cannot write " + name + " under " + dir_);
      out << text;
      arts.push_back({{"file", name}, {"bytes", text.size()}, {"fnv1a", hex64(fnv1a(text))}});
    }
    Json man{{"command", command_},
             {"config", config_},
             {"config_hash", hex64(fnv1a(config_.dump()))},
             {"artifacts", arts},
             {"summary", summary_}};
    std::ofstream out(fs::path(dir_) / "manifest.json", std::ios::binary);
    if (!out) throw ValidationError("cannot write manifest under " + dir_);
    out << dump(man);
  }

private:
  std::string dir_, command_;
  std::vector<std::pair<std::string, std::string>> files_;
  Json config_ = Json::object(), summary_ = Json::object();
};

// Flags shared by commands that solve one boundary problem.
struct SolveFlags {
  std::string config, boundary, kind = "unit-disc", path = "potential";
  double a = 1.0, tol = 1e-10;
  int n = 65, m = 256, max_iter = 60;
  CLI::App* app = nullptr;

  void add(CLI::App* sub) {
    app = sub;
    sub->add_option("--config", config, "JSON solve config file");
    sub->add_option("--boundary", boundary, "boundary data JSON");
    sub->add_option("--a", a, "parameter a (0 runs the continuation)");
    sub->add_option("--n", n, "lattice points per axis (odd)");
    sub->add_option("--m", m, "boundary samples");
    sub->add_option("--kind", kind, "domain kind");
    sub->add_option("--tol", tol, "Newton tolerance");
    sub->add_option("--max-iter", max_iter, "Newton iteration cap");
    sub->add_option("--path", path, "potential | v");
  }

  bool given(const char* flag) const { return app->count(flag) > 0; }

  SolveConfig resolve() const {
    Json j = config.empty() ? Json::object() : parse_json_text(read_file(config), "config");
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    if (given("--boundary")) j["boundary"] = parse_json_text(boundary, "--boundary");
    if (!j.contains("boundary")) throw ValidationError("missing boundary data (--boundary or --config)");
    if (given("--a") || !j.contains("a")) j["a"] = a;
    Json& d = j["domain"];
    if (!d.is_object()) d = Json::object();
    if (given("--n") || !d.contains("n")) d["n"] = n;
    if (given("--m") || !d.contains("m")) d["m"] = m;
    if (given("--kind") || !d.contains("kind")) d["kind"] = kind;
    if (given("--tol") || !j.contains("tol")) j["tol"] = tol;
    if (given("--max-iter") || !j.contains("max_iter")) j["max_iter"] = max_iter;
    if (given("--path") || !j.contains("path")) j["path"] = path;
    return SolveConfig::from_json(j);
  }
};

SolutionPair run_solve(const SolveConfig& c, const DomainPtr& d) {
  const bool vpath = c.opts.path == SolvePath::v_equation;
  if (c.a == 0) return continuation_to_zero(d, c.boundary, c.opts);
  if (vpath) return solve_v(d, c.boundary, c.a, {0.0, 0.0}, c.opts);
  return solve_potential(d, c.boundary, c.a, c.opts);
}

std::string csv(const GridField& f) {
  std::ostringstream os;
  write_csv(os, f);
  return os.str();
}

// "lo:hi:step" as an inclusive grid.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(parse_list(tok, "grid")[0]);
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
    throw ValidationError("grid must be lo:hi:step with step > 0 and lo <= hi");
  const long count = std::lround((parts[1] - parts[0]) / parts[2]);
  if (count > 100000) throw ValidationError("grid has too many points");
  std::vector<double> out;
  for (long i = 0; i <= count; ++i) out.push_back(parts[0] + i * parts[2]);
  return out;
}

// "a:v", "a:lo:hi:count" per axis, comma separated.
std::array<std::vector<double>, 3> parse_fibre_grid(const std::string& s) {
  std::array<std::vector<double>, 3> axes;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string tok;
    while (std::getline(is, tok, ':')) parts.push_back(tok);
    if (parts.size() < 2) throw ValidationError("fibre grid entry '" + item + "' needs axis:values");
    int ax = parts[0] == "a" ? 0 : parts[0] == "b" ? 1 : parts[0] == "c" ? 2 : -1;
    if (ax < 0) throw ValidationError("fibre grid axis must be a, b or c");
    std::vector<double> vals;
    for (size_t i = 1; i < parts.size(); ++i) vals.push_back(parse_list(parts[i], "fibre grid")[0]);
    if (vals.size() == 1) {
      axes[ax] = vals;
    } else if (vals.size() == 3) {
      int k = static_cast<int>(vals[2]);
      if (k < 1 || k != vals[2]) throw ValidationError("fibre grid count must be a positive integer");
      for (int i = 0; i < k; ++i) axes[ax].push_back(k == 1 ? vals[0] : vals[0] + (vals[1] - vals[0]) * i / (k - 1));
    } else {
      throw ValidationError("fibre grid entry must be axis:v or axis:lo:hi:count");
    }
  }
  for (auto& a : axes)
    if (a.empty()) a = {0.0};
  return axes;
}

ExactSolutionId parse_exact(const std::string& s) {
  auto colon = s.find(':');
  std::string name = s.substr(0, colon);
  std::vector<double> args = colon == std::string::npos ? std::vector<double>{} : parse_list(s.substr(colon + 1), "exact");
  if (name == "harvey-lawson") {
    if (args.size() != 1) throw ValidationError("harvey-lawson:a expected");
    return ExactSolutionId::harvey_lawson(args[0]);
  }
  if (name == "affine") {
    if (args.size() != 3) throw ValidationError("affine:alpha,beta,gamma expected");
    return ExactSolutionId::affine(args[0], args[1], args[2]);
  }
  if (name == "two-sheet") return ExactSolutionId::two_sheet();
  throw ValidationError("unknown exact model '" + name + "'");
}

int dispatch(CLI::App& app, const std::vector<std::string>& raw) {
  std::string out_dir = "out";
  app.add_option("--out", out_dir, "output directory");
  app.require_subcommand(1);

  // solve
  SolveFlags solve_f;
  auto* solve = app.add_subcommand("solve", "solve the Dirichlet problem; f, u, v CSVs and convergence log");
  solve_f.add(solve);

  // singularities
  SolveFlags sing_f;
  auto* sing = app.add_subcommand("singularities", "a = 0 continuation and singular point scan");
  sing_f.add(sing);
  sing_f.a = 0.0;

  // count
  SolveFlags count_f;
  std::string hat = "{}";
  auto* count = app.add_subcommand("count", "zeros of the difference of two solutions");
  count_f.add(count);
  count_f.a = 0.5;
  count->add_option("--hat", hat, "second boundary datum JSON (default zero)");

  // cone-phi
  std::string a_grid;
  std::vector<double> traj_A;
  int steps = 256;
  auto* cone = app.add_subcommand("cone-phi", "rotation angle table of the cone ODE");
  cone->add_option("--a-grid", a_grid, "lo:hi:step")->required();
  cone->add_option("--trajectory", traj_A, "also dump trajectories for these A");
  cone->add_option("--steps", steps, "samples per period in trajectory dumps");

  // fibration
  std::string fib_phi = "{}", fib_grid = "a:0.5,b:-1:1:3,c:-1:1:3";
  int fib_n = 65, fib_m = 256, max_pairs = 20;
  bool check = false;
  auto* fib = app.add_subcommand("fibration", "solve a grid of fibres phi + b x + c y");
  fib->add_option("--phi", fib_phi, "base datum JSON");
  fib->add_option("--grid", fib_grid, "a:v|a:lo:hi:count,b:...,c:...");
  fib->add_option("--n", fib_n, "lattice points per axis");
  fib->add_option("--m", fib_m, "boundary samples");
  fib->add_flag("--check-disjoint", check, "certify disjointness of equal-a fibre pairs");
  fib->add_option("--max-pairs", max_pairs, "cap on certified pairs");

  // search-multiplicity
  int s_n = 1, s_grid = 65, s_m = 256;
  std::string gamma = "0", psi = "{}";
  double s_a = 0.5, root_tol = 1e-12, budget_K = 0;
  auto* srch = app.add_subcommand("search-multiplicity", "coefficients giving a zero of multiplicity n at (0,0)");
  srch->add_option("--n", s_n, "target multiplicity");
  srch->add_option("--gamma", gamma, "comma-separated gamma_j (a single 0 means all zero)");
  srch->add_option("--psi,--psi-fourier", psi, "background datum JSON (Fourier)");
  srch->add_option("--a", s_a, "parameter a (0 runs the limit search)");
  srch->add_option("--grid-n", s_grid, "lattice points per axis");
  srch->add_option("--m", s_m, "boundary samples");
  srch->add_option("--root-tol", root_tol, "coefficient tolerance");
  srch->add_option("--budget-K", budget_K, "override the budget constant");

  // embed
  SolveFlags emb_f;
  std::string exact, proj = "z1-z3re";
  int theta = 32;
  double fixed_tol = 1e-8;
  auto* emb = app.add_subcommand("embed", "U(1)-orbit mesh in C^3 (OBJ plus R^6 CSV)");
  emb_f.add(emb);
  emb->add_option("--exact", exact, "harvey-lawson:a | affine:alpha,beta,gamma | two-sheet");
  emb->add_option("--theta", theta, "theta samples");
  emb->add_option("--projection", proj, "z1-z3re | z3-z1re | pca");
  emb->add_option("--fixed-tol", fixed_tol, "collapse tolerance for fixed points");

  std::vector<std::string> args(raw.rbegin(), raw.rend());
  app.parse(args);

  const int threads = thread_cap();
  std::string sub = app.get_subcommands().front()->get_name();
  Output out(out_dir, sub);

  if (*solve) {
    SolveConfig c = solve_f.resolve();
    auto d = c.build();
    SolutionPair p = run_solve(c, d);
    out.set_config(c.to_json());
    if (p.f) out.add("f.csv", csv(*p.f));
    out.add("u.csv", csv(p.u));
    out.add("v.csv", csv(p.v));
    out.add("convergence.json", dump(convergence_log(p)));
    out.set_summary({{"stages", p.log.size()}, {"nodes", d->size()}});
  } else if (*sing) {
    SolveConfig c = sing_f.resolve();
    if (c.a != 0) throw ValidationError("singularities needs a = 0");
    auto d = c.build();
    SolutionPair p = run_solve(c, d);
    SingularityScan scan = find_singularities(p);
    for (auto& s : scan.points) {
      try {
        s.cone = classify_tangent_cone(s).tag;
      } catch (const NumericalError&) {
        s.cone = ConeCase::undetermined;
      }
    }
    out.set_config(c.to_json());
    out.add("singularities.json", dump(singularity_json(scan)));
    out.add("convergence.json", dump(convergence_log(p)));
    out.set_summary({{"points", scan.points.size()}, {"whole_axis_singular", scan.whole_axis_singular}});
  } else if (*count) {
    SolveConfig c = count_f.resolve();
    BoundaryData h = parse_boundary(parse_json_text(hat, "--hat"));
    auto d = c.build();
    SolutionPair p = run_solve(c, d);
    SolveConfig ch = c;
    ch.boundary = h;
    SolutionPair q = run_solve(ch, d);
    ZeroReport r = verify_count(p, q);
    std::optional<SingularityScan> scan;
    if (c.a == 0) scan = find_singularities(p);
    Json j = zero_report_json(r, scan ? &*scan : nullptr);
    const int l = count_boundary_extrema(c.boundary - h);
    j["boundary_extrema"] = l;
    j["bound_holds"] = r.total_multiplicity() <= l - 1;
    Json cfg = c.to_json();
    cfg["hat"] = to_json(h);
    out.set_config(cfg);
    out.add("zeros.json", dump(j));
    out.set_summary({{"boundary_winding", r.boundary_winding}, {"consistent", r.consistent()}});
  } else if (*cone) {
    std::vector<double> As = parse_grid(a_grid), drift;
    std::vector<PhiResult> phis;
    for (double A : As) {
      phis.push_back(compute_phi(A));
      drift.push_back(integrate_cone(A, 256).drift);
    }
    std::ostringstream os;
    write_phi_table(os, As, phis, drift);
    out.add("phi_table.csv", os.str());
    for (size_t i = 0; i < traj_A.size(); ++i) {
      std::ostringstream ts;
      write_trajectory(ts, integrate_cone(traj_A[i], steps));
      out.add("trajectory_" + std::to_string(i) + ".csv", ts.str());
    }
    out.set_config({{"a_grid", a_grid}, {"trajectory", traj_A}, {"steps", steps}});
    out.set_summary({{"rows", As.size()}});
  } else if (*fib) {
    auto axes = parse_fibre_grid(fib_grid);
    BoundaryData phi = parse_boundary(parse_json_text(fib_phi, "--phi"));
    FibrationFamily fam(build_domain(DomainKind::unit_disc, fib_n, fib_m), phi);
    std::vector<FibreParams> ps;
    for (double a : axes[0])
      for (double b : axes[1])
        for (double c : axes[2]) {
          FibreParams p(a, b, c);
          if (!fam.in_box(p)) throw ValidationError("fibre parameters outside the family box");
          ps.push_back(p);
        }
    fam.solve_all(ps, threads);
    Json fibres = Json::array();
    for (const auto& p : ps) {
      auto s = fam.solve_fibre(p);
      const int o = fam.domain()->origin();
      fibres.push_back({{"a", p[0]}, {"b", p[1]}, {"c", p[2]}, {"u0", s->u[o]}, {"v0", s->v[o]}});
    }
    out.add("fibres.json", dump(fibres));
    Json cfg{{"phi", to_json(phi)}, {"grid", fib_grid}, {"n", fib_n}, {"m", fib_m}};
    if (check) {
      FibrationCertificate cert;
      for (size_t i = 0; i < ps.size() && cert.pairs_tested < max_pairs; ++i)
        for (size_t j = i + 1; j < ps.size() && cert.pairs_tested < max_pairs; ++j) {
          if (ps[i][0] != ps[j][0]) continue;
          DisjointCertificate dc = verify_disjoint(fam, ps[i], ps[j]);
          cert.pairs_tested++;
          cert.min_separation = std::min(cert.min_separation, dc.min_separation);
          cert.winding_zero = cert.winding_zero && dc.winding_zero;
          cert.pairs.push_back({ps[i], ps[j]});
        }
      out.add("certificate.json", dump(to_json(cert)));
      cfg["max_pairs"] = max_pairs;
      out.set_summary({{"fibres", ps.size()}, {"pairs_tested", cert.pairs_tested}, {"winding_zero", cert.winding_zero}});
      out.set_config(cfg);
      out.write();
      return (cert.winding_zero && cert.min_separation > 0) ? exit_ok : exit_numerical;
    }
    out.set_config(cfg);
    out.set_summary({{"fibres", ps.size()}});
  } else if (*srch) {
    SearchProblem P;
    P.domain = build_domain(DomainKind::unit_disc, s_grid, s_m);
    P.n = s_n;
    std::vector<double> g = parse_list(gamma, "--gamma");
    if (g.size() == 1 && g[0] == 0) g.assign(s_n, 0.0);
    P.gamma = g;
    P.psi = parse_boundary(parse_json_text(psi, "--psi"));
    P.a = s_a;
    P.root_tol = root_tol;
    P.budget_K = budget_K;
    SearchResult r = s_a == 0 ? search_limit_a0(P) : search(P);
    out.add("search.json", dump(search_result_json(r)));
    out.set_config({{"n", s_n},
                    {"gamma", g},
                    {"psi", to_json(P.psi)},
                    {"a", s_a},
                    {"grid_n", s_grid},
                    {"m", s_m},
                    {"root_tol", root_tol},
                    {"budget_K", budget_K}});
    out.set_summary({{"certified_multiplicity", r.certified_multiplicity}});
  } else if (*emb) {
    SolutionPair p;
    Json cfg;
    if (!exact.empty()) {
      auto d = build_domain(parse_domain_kind(emb_f.kind), emb_f.n, emb_f.m);
      p = sample_pair(d, parse_exact(exact));
      cfg = {{"exact", exact}, {"n", emb_f.n}, {"m", emb_f.m}};
    } else {
      SolveConfig c = emb_f.resolve();
      p = run_solve(c, c.build());
      cfg = c.to_json();
    }
    Projection pr = parse_projection(proj);
    EmbeddedMesh mesh = embed(p, theta, fixed_tol);
    std::ostringstream obj, r6;
    write_obj(obj, mesh, pr);
    write_r6_csv(r6, mesh);
    out.add("mesh.obj", obj.str());
    out.add("mesh_r6.csv", r6.str());
    cfg["theta"] = theta;
    cfg["projection"] = to_string(pr);
    cfg["fixed_tol"] = fixed_tol;
    out.set_config(cfg);
    out.set_summary({{"vertices", mesh.vertices.size()},
                     {"triangles", mesh.triangles.size()},
                     {"fixed_points", mesh.fixed_points()}});
  }
  out.write();
  return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"numerical lab for U(1)-invariant special Lagrangian 3-folds", "slu1"};
  try {
    return dispatch(app, args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_validation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  return run_cli(args);
}

} // namespace slu1
