#include "slu1/zeros.hpp"
#include "slu1/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace slu1 {

namespace {

constexpr double kPi = std::numbers::pi;

double increment(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
}

} // namespace

int winding_number(const std::vector<Eigen::Vector2d>& loop) {
  if (loop.size() < 3) throw ValidationError("loop needs at least three points");
  const size_t n = (loop.front() == loop.back()) ? loop.size() - 1 : loop.size();
  double total = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = loop[i];
    const auto& b = loop[(i + 1) % n];
    if (a.squaredNorm() == 0 || b.squaredNorm() == 0) throw ValidationError("origin lies on the loop");
    double d = increment(a, b);
    if (std::abs(d) >= 0.5 * kPi) throw ValidationError("loop sampling too coarse to unwrap");
    total += d;
  }
  const double w = total / (2 * kPi);
  const double r = std::round(w);
  if (std::abs(w - r) > 0.1) throw NumericalError("winding number not integral");
  return static_cast<int>(r);
}

Eigen::Vector2d difference(const SolutionPair& p, const SolutionPair& q, double x, double y) {
  return {interpolate(p.u, x, y) - interpolate(q.u, x, y), interpolate(p.v, x, y) - interpolate(q.v, x, y)};
}

namespace {

// Winding along a circle with adaptive sampling.
int circle_winding(const SolutionPair& p, const SolutionPair& q, Eigen::Vector2d c, double r) {
  for (int N = 64; N <= 16384; N *= 2) {
    std::vector<Eigen::Vector2d> loop(N);
    double dmax = 0, dmin = INFINITY;
    for (int s = 0; s < N; ++s) {
      double t = 2 * kPi * s / N;
      loop[s] = difference(p, q, c.x() + r * std::cos(t), c.y() + r * std::sin(t));
      dmax = std::max(dmax, loop[s].norm());
      dmin = std::min(dmin, loop[s].norm());
    }
    if (!(dmin > 1e-13 * dmax) || dmax == 0) throw NumericalError("difference vanishes on the probe circle");
    try {
      return winding_number(loop);
    } catch (const ValidationError&) {
      continue;  // refine
    }
  }
  throw NumericalError("probe circle cannot be resolved");
}

} // namespace

int zero_multiplicity(const SolutionPair& pair, const SolutionPair& pair_hat, Eigen::Vector2d center,
                      double eps) {
  const Domain& d = *pair.domain();
  if (!(eps > 0)) throw ValidationError("probe radius must be positive");
  if (center.norm() + eps > d.interp_radius())
    throw ValidationError("probe circle leaves the domain interior");
  int k1 = circle_winding(pair, pair_hat, center, eps);
  int k2 = circle_winding(pair, pair_hat, center, 0.5 * eps);
  if (k1 != k2) {
    std::ostringstream os;
    os << "multiplicity unstable under radius halving (" << k1 << " vs " << k2 << ")";
    throw NumericalError(os.str());
  }
  return k1;
}

ProbeResult probe_multiplicity(const SolutionPair& pair, const SolutionPair& pair_hat,
                               Eigen::Vector2d center, double limit) {
  const Domain& d = *pair.domain();
  double eps = std::min({8.0 * d.h, limit, d.interp_radius() - center.norm()});
  std::string last = "probe circle does not fit";
  for (int attempt = 0; attempt <= 6 && eps > 0; ++attempt, eps *= 0.5) {
    try {
      return {zero_multiplicity(pair, pair_hat, center, eps), eps};
    } catch (const NumericalError& e) {
      last = e.what();
    }
  }
  throw NumericalError("probe radius protocol failed: " + last);
}

SolutionPair reflected(const SolutionPair& p) {
  SolutionPair r;
  r.a = p.a;
  r.provenance = p.provenance;
  r.u = reflect(p.u);
  r.v = reflect(p.v);
  r.v.values = -r.v.values;
  r.v.cut = -r.v.cut;
  r.v.boundary = -r.v.boundary;
  if (p.f) {
    r.f = reflect(*p.f);
    r.f->values = -r.f->values;
    r.f->cut = -r.f->cut;
    r.f->boundary = -r.f->boundary;
  }
  return r;
}

std::string to_string(SingularType t) {
  switch (t) {
    case SingularType::increasing: return "increasing";
    case SingularType::decreasing: return "decreasing";
    case SingularType::maximum: return "maximum";
    case SingularType::minimum: return "minimum";
    case SingularType::undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(ConeCase c) {
  switch (c) {
    case ConeCase::t2_i: return "T2-cone-(i)";
    case ConeCase::t2_ii: return "T2-cone-(ii)";
    case ConeCase::plane: return "plane";
    case ConeCase::plane_union: return "plane-union";
    case ConeCase::plane_pair: return "plane-pair";
    case ConeCase::undetermined: return "undetermined";
  }
  return "?";
}

bool SingularityReport::parity_ok() const {
  switch (type) {
    case SingularType::increasing:
    case SingularType::decreasing: return multiplicity % 2 != 0;
    case SingularType::maximum:
    case SingularType::minimum: return multiplicity % 2 == 0;
    default: return false;
  }
}

SingularityScan find_singularities(const SolutionPair& pair, double axis_tol) {
  const Domain& d = *pair.domain();
  const int j0 = d.n / 2;
  std::vector<int> nodes;
  for (int i = 0; i < d.n; ++i)
    if (d.index(i, j0) >= 0) nodes.push_back(d.index(i, j0));
  const int L = static_cast<int>(nodes.size());
  std::vector<double> x(L), v(L);
  double vmax = 0;
  for (int i = 0; i < L; ++i) {
    x[i] = d.x(nodes[i]);
    v[i] = pair.v.values[nodes[i]];
    vmax = std::max(vmax, std::abs(v[i]));
  }
  if (axis_tol < 0) axis_tol = 10.0 * 1e-10 * std::max(1.0, vmax);
  std::vector<char> nz(L);
  for (int i = 0; i < L; ++i) nz[i] = std::abs(v[i]) < axis_tol;

  SingularityScan scan;
  // near-zero runs
  int longest = 0;
  for (int i = 0; i < L;) {
    if (!nz[i]) { ++i; continue; }
    int j = i;
    while (j < L && nz[j]) ++j;
    longest = std::max(longest, j - i);
    i = j;
  }
  if (longest >= std::max(5, L / 4)) {
    scan.whole_axis_singular = true;
    return scan;
  }

  // events: [lo, hi] index ranges (inclusive) with estimated location
  struct Event { int lo, hi; double b; };
  std::vector<Event> ev;
  for (int i = 0; i < L; ++i) {
    if (nz[i]) {
      int j = i;
      while (j + 1 < L && nz[j + 1]) ++j;
      double b = 0.5 * (x[i] + x[j]);
      if (i == j && i > 0 && i + 1 < L && v[i + 1] != v[i - 1]) {
        double slope = (v[i + 1] - v[i - 1]) / (x[i + 1] - x[i - 1]);
        double sh = -v[i] / slope;
        if (std::abs(sh) < 0.5 * d.h) b = x[i] + sh;
      }
      ev.push_back({i, j, b});
      i = j;
    } else if (i + 1 < L && !nz[i + 1] && (v[i] > 0) != (v[i + 1] > 0)) {
      ev.push_back({i, i + 1, x[i] - v[i] * (x[i + 1] - x[i]) / (v[i + 1] - v[i])});
    }
  }
  // merge events closer than 2h
  std::vector<Event> merged;
  for (const auto& e : ev) {
    if (!merged.empty() && e.b - merged.back().b <= 2.0 * d.h + 1e-12) {
      auto& m = merged.back();
      m.b = 0.5 * (m.b + e.b);
      m.hi = std::max(m.hi, e.hi);
    } else {
      merged.push_back(e);
    }
  }

  const SolutionPair refl = reflected(pair);
  for (size_t q = 0; q < merged.size(); ++q) {
    const auto& e = merged[q];
    SingularityReport r;
    r.b = e.b;
    int li = e.lo - 1, ri = e.hi + 1;
    while (li >= 0 && nz[li]) --li;
    while (ri < L && nz[ri]) ++ri;
    if (e.lo < e.hi && !nz[e.lo]) li = e.lo;  // sign-change pair
    if (e.lo < e.hi && !nz[e.hi]) ri = e.hi;
    if (li >= 0 && ri < L && e.hi - e.lo <= 3) {
      bool lneg = v[li] < 0, rneg = v[ri] < 0;
      r.type = lneg && !rneg ? SingularType::increasing
               : !lneg && rneg ? SingularType::decreasing
               : lneg ? SingularType::maximum
                      : SingularType::minimum;
    }
    double limit = INFINITY;
    if (q > 0) limit = std::min(limit, 0.5 * (e.b - merged[q - 1].b));
    if (q + 1 < merged.size()) limit = std::min(limit, 0.5 * (merged[q + 1].b - e.b));
    ProbeResult pr = probe_multiplicity(pair, refl, {e.b, 0.0}, limit);
    r.multiplicity = pr.multiplicity;
    r.probe_radius = pr.radius;
    scan.points.push_back(r);
  }
  return scan;
}

int ZeroReport::total_multiplicity() const {
  int s = 0;
  for (const auto& z : zeroes) s += z.multiplicity;
  return s;
}

namespace {

// Principal angle increment of the difference along a lattice edge, with
// subdivision by interpolation when the endpoint increment is large.
double edge_increment(const SolutionPair& p, const SolutionPair& q, const Eigen::Vector2d& da,
                      const Eigen::Vector2d& db, Eigen::Vector2d xa, Eigen::Vector2d xb, bool& ambiguous) {
  double inc = increment(da, db);
  if (std::abs(inc) < 0.5 * kPi) return inc;
  const int S = 16;
  double total = 0;
  Eigen::Vector2d prev = da;
  for (int s = 1; s <= S; ++s) {
    Eigen::Vector2d cur = s == S ? db : [&] {
      Eigen::Vector2d pt = xa + (xb - xa) * (double(s) / S);
      return difference(p, q, pt.x(), pt.y());
    }();
    double di = increment(prev, cur);
    if (std::abs(di) >= 0.5 * kPi || cur.squaredNorm() == 0) ambiguous = true;
    total += di;
    prev = cur;
  }
  return total;
}

} // namespace

ZeroReport verify_count(const SolutionPair& pair, const SolutionPair& pair_hat) {
  const Domain& d = *pair.domain();
  const int N = d.size();
  std::vector<Eigen::Vector2d> D(N);
  for (int k = 0; k < N; ++k) {
    D[k] = {pair.u.values[k] - pair_hat.u.values[k], pair.v.values[k] - pair_hat.v.values[k]};
  }
  auto pos = [&](int k) { return Eigen::Vector2d(d.x(k), d.y(k)); };
  auto cell_ok = [&](int i, int j) {
    return d.index(i, j) >= 0 && d.index(i + 1, j) >= 0 && d.index(i, j + 1) >= 0 && d.index(i + 1, j + 1) >= 0;
  };

  // edge increments keyed by (from, to) node with to > from in lattice order
  std::map<std::pair<int, int>, double> inc;
  std::vector<char> amb_node(N, 0);
  auto edge = [&](int a, int b) -> double {
    bool flip = a > b;
    int lo = flip ? b : a, hi = flip ? a : b;
    auto it = inc.find({lo, hi});
    double val;
    if (it == inc.end()) {
      bool amb = false;
      if (D[lo].squaredNorm() == 0 || D[hi].squaredNorm() == 0) {
        amb = true;
        val = 0;
      } else {
        val = edge_increment(pair, pair_hat, D[lo], D[hi], pos(lo), pos(hi), amb);
      }
      if (amb) amb_node[lo] = amb_node[hi] = 1;
      inc[{lo, hi}] = val;
    } else {
      val = it->second;
    }
    return flip ? -val : val;
  };

  ZeroReport rep;
  const int n = d.n;
  std::vector<int> cw(static_cast<size_t>(n) * n, 0);
  std::vector<char> flagged(static_cast<size_t>(n) * n, 0);
  double bw = 0;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      if (!cell_ok(i, j)) continue;
      int c[4] = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
      double s = 0;
      for (int e = 0; e < 4; ++e) {
        double de = edge(c[e], c[(e + 1) % 4]);
        s += de;
        // boundary edge: the cell across this edge is incomplete
        static const int oi[4] = {0, 1, 0, -1}, oj[4] = {-1, 0, 1, 0};
        if (!cell_ok(i + oi[e], j + oj[e])) {
          if (amb_node[c[e]] || amb_node[c[(e + 1) % 4]])
            throw NumericalError("difference vanishes on the boundary ring");
          bw += de;
        }
      }
      int w = static_cast<int>(std::lround(s / (2 * kPi)));
      bool amb = false;
      for (int e = 0; e < 4; ++e) amb = amb || amb_node[c[e]];
      cw[static_cast<size_t>(j) * n + i] = w;
      flagged[static_cast<size_t>(j) * n + i] = (w != 0 || amb);
    }
  rep.boundary_winding = static_cast<int>(std::lround(bw / (2 * kPi)));

  // 8-connected clusters of flagged cells
  std::vector<int> label(static_cast<size_t>(n) * n, -1);
  struct Cluster { std::vector<std::pair<int, int>> cells; int w = 0; Eigen::Vector2d loc; };
  std::vector<Cluster> cl;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      size_t id = static_cast<size_t>(j) * n + i;
      if (!flagged[id] || label[id] >= 0) continue;
      Cluster c;
      std::vector<std::pair<int, int>> st{{i, j}};
      label[id] = static_cast<int>(cl.size());
      while (!st.empty()) {
        auto [ci, cj] = st.back();
        st.pop_back();
        c.cells.push_back({ci, cj});
        c.w += cw[static_cast<size_t>(cj) * n + ci];
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            int ni = ci + di, nj = cj + dj;
            if (ni < 0 || nj < 0 || ni + 1 >= n || nj + 1 >= n) continue;
            size_t nid = static_cast<size_t>(nj) * n + ni;
            if (flagged[nid] && label[nid] < 0) {
              label[nid] = label[id];
              st.push_back({ni, nj});
            }
          }
      }
      cl.push_back(std::move(c));
    }
  std::sort(cl.begin(), cl.end(), [](const Cluster& a, const Cluster& b) { return a.cells.front() < b.cells.front(); });

  // locate: centroid of cells, refined by Newton on the interpolated difference
  for (auto& c : cl) {
    Eigen::Vector2d ctr = Eigen::Vector2d::Zero();
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (auto [i, j] : c.cells) {
      Eigen::Vector2d p(d.coord(i) + 0.5 * d.h, d.coord(j) + 0.5 * d.h);
      ctr += p;
      xmin = std::min(xmin, p.x()); xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y()); ymax = std::max(ymax, p.y());
    }
    ctr /= static_cast<double>(c.cells.size());
    Eigen::Vector2d z = ctr;
    try {
      const double dh = 1e-4 * d.h;
      for (int it = 0; it < 30; ++it) {
        Eigen::Vector2d F = difference(pair, pair_hat, z.x(), z.y());
        Eigen::Matrix2d J;
        J.col(0) = (difference(pair, pair_hat, z.x() + dh, z.y()) - F) / dh;
        J.col(1) = (difference(pair, pair_hat, z.x(), z.y() + dh) - F) / dh;
        Eigen::Vector2d step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) break;
        z += step;
        if (z.x() < xmin - d.h || z.x() > xmax + d.h || z.y() < ymin - d.h || z.y() > ymax + d.h) {
          z = ctr;
          break;
        }
        if (step.norm() < 1e-12) break;
      }
    } catch (const ValidationError&) {
      z = ctr;
    }
    c.loc = z;
  }

  for (size_t a = 0; a < cl.size(); ++a) {
    const auto& c = cl[a];
    double limit = INFINITY;
    for (size_t b = 0; b < cl.size(); ++b)
      if (b != a) limit = std::min(limit, 0.5 * (cl[b].loc - c.loc).norm());
    ZeroEntry z;
    z.x = c.loc.x();
    z.y = c.loc.y();
    z.cell_winding = c.w;
    if (limit < 0.25 * d.h) throw NumericalError("zero cluster cannot be isolated at grid resolution");
    if (d.interp_radius() - c.loc.norm() < 0.25 * d.h) {
      // too close to the boundary for a probe circle: the lattice loop
      // around the cluster is the certificate (probe_radius stays 0)
      z.multiplicity = c.w;
    } else {
      ProbeResult pr;
      try {
        pr = probe_multiplicity(pair, pair_hat, c.loc, limit);
      } catch (const NumericalError& e) {
        throw NumericalError(std::string("zero cluster cannot be isolated at grid resolution: ") + e.what());
      }
      z.multiplicity = pr.multiplicity;
      z.probe_radius = pr.radius;
    }
    z.singular = pair.a == 0 && std::abs(z.y) < 0.5 * d.h &&
                 std::abs(interpolate(pair.v, z.x, 0.0)) < 1e-6 * (1 + pair.v.values.cwiseAbs().maxCoeff());
    if (z.multiplicity == 0 && c.w == 0) continue;  // no zero after all
    rep.zeroes.push_back(z);
  }
  return rep;
}

int count_boundary_extrema(const BoundaryData& f) {
  const int N = std::max(8192, 64 * std::max(1, f.max_mode()));
  std::vector<double> g(N);
  double gmax = 0;
  for (int s = 0; s < N; ++s) {
    g[s] = f(2 * kPi * s / N, 1);
    gmax = std::max(gmax, std::abs(g[s]));
  }
  if (gmax == 0) throw ValidationError("boundary difference is constant");
  const double tol = 1e-9 * gmax;
  std::vector<int> sg;
  for (int s = 0; s < N; ++s)
    if (std::abs(g[s]) > tol) sg.push_back(g[s] > 0 ? 1 : -1);
  int l = 0;
  for (size_t s = 0; s < sg.size(); ++s)
    if (sg[s] > 0 && sg[(s + 1) % sg.size()] < 0) ++l;
  return l;
}

} // namespace slu1
