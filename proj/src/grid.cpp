#include "slu1/grid.hpp"
#include "slu1/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace slu1 {

namespace {

// Nodes closer than this fraction of h to the boundary are left out of the
// mask; keeps every cut distance bounded below.
constexpr double kBoundaryClearance = 0.05;

const int kDi[4] = {1, -1, 0, 0};
const int kDj[4] = {0, 0, 1, -1};

} // namespace

DomainKind parse_domain_kind(const std::string& s) {
  if (s == "unit-disc") return DomainKind::unit_disc;
  if (s == "superellipse-excluded") return DomainKind::superellipse_excluded;
  if (s == "mapped-convex") return DomainKind::mapped_convex;
  throw ValidationError("unknown domain kind: " + s);
}

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::unit_disc: return "unit-disc";
    case DomainKind::superellipse_excluded: return "superellipse-excluded";
    case DomainKind::mapped_convex: return "mapped-convex";
  }
  return "?";
}

double Domain::theta(int s) const { return 2.0 * std::numbers::pi * s / m; }

Eigen::Vector2d Domain::boundary_point(double t) const {
  return {std::cos(t), std::sin(t)};
}

bool Domain::contains(double x, double y) const { return x * x + y * y < 1.0; }

DomainPtr build_domain(DomainKind kind, int n, int m) {
  if (kind != DomainKind::unit_disc)
    throw ValidationError("unsupported domain kind: " + to_string(kind));
  if (n < 17 || m < 64) throw ValidationError("resolution below minimum (n >= 17, m >= 64)");
  if (n % 2 == 0) throw ValidationError("n must be odd so that y = 0 is a lattice row");

  auto d = std::make_shared<Domain>();
  d->kind = kind;
  d->n = n;
  d->m = m;
  d->h = 2.0 / (n - 1);
  d->symmetric = true;

  const double rmax = 1.0 - kBoundaryClearance * d->h;
  d->lookup_.assign(static_cast<size_t>(n) * n, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x = d->coord(i), y = d->coord(j);
      if (std::hypot(x, y) < rmax) {
        d->lookup_[static_cast<size_t>(j) * n + i] = d->size();
        d->ij_.push_back({i, j});
      }
    }

  const int N = d->size();
  d->links_.resize(N);
  d->layer_.assign(N, 0);
  for (int k = 0; k < N; ++k) {
    const int i = d->ij_[k][0], j = d->ij_[k][1];
    const double px = d->coord(i), py = d->coord(j);
    for (int dir = 0; dir < 4; ++dir) {
      Link& L = d->links_[k][dir];
      int nb = d->index(i + kDi[dir], j + kDj[dir]);
      if (nb >= 0) {
        L.node = nb;
        L.dist = d->h;
        continue;
      }
      // |P + t e| = 1 along the unit direction e
      double pe = px * kDi[dir] + py * kDj[dir];
      double t = -pe + std::sqrt(pe * pe - (px * px + py * py) + 1.0);
      CutPoint c;
      c.x = px + t * kDi[dir];
      c.y = py + t * kDj[dir];
      c.theta = std::atan2(c.y, c.x);
      if (c.theta < 0) c.theta += 2.0 * std::numbers::pi;
      c.owner = k;
      c.dir = dir;
      L.cut = static_cast<int>(d->cuts_.size());
      L.dist = t;
      d->cuts_.push_back(c);
    }
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj)
        if (d->index(i + di, j + dj) < 0) d->layer_[k] = 1;
  }

  d->cut_mirror_.assign(d->cuts_.size(), -1);
  for (size_t c = 0; c < d->cuts_.size(); ++c) {
    const CutPoint& cp = d->cuts_[c];
    int mk = d->mirror(cp.owner);
    int mdir = cp.dir == North ? South : cp.dir == South ? North : cp.dir;
    d->cut_mirror_[c] = d->links_[mk][mdir].cut;
  }
  return d;
}

GridField sample(const DomainPtr& d, const std::function<double(double, double)>& g) {
  GridField f(d);
  for (int k = 0; k < d->size(); ++k) f.values[k] = g(d->x(k), d->y(k));
  f.cut.resize(static_cast<int>(d->cuts().size()));
  for (size_t c = 0; c < d->cuts().size(); ++c) f.cut[c] = g(d->cuts()[c].x, d->cuts()[c].y);
  f.boundary.resize(d->m);
  for (int s = 0; s < d->m; ++s) {
    auto p = d->boundary_point(d->theta(s));
    f.boundary[s] = g(p.x(), p.y());
  }
  return f;
}

namespace {

// Derivative at 0 of the Lagrange interpolant through (s_k, f_k).
double lagrange_slope(const double* s, const double* f, int npts) {
  double r = 0;
  for (int k = 0; k < npts; ++k) {
    double w = 0;
    for (int l = 0; l < npts; ++l) {
      if (l == k) continue;
      double p = 1.0 / (s[k] - s[l]);
      for (int q = 0; q < npts; ++q)
        if (q != k && q != l) p *= (0.0 - s[q]) / (s[k] - s[q]);
      w += p;
    }
    r += w * f[k];
  }
  return r;
}

} // namespace

GridField differentiate(const GridField& f, Axis axis) {
  const Domain& d = *f.domain;
  const int plus = axis == Axis::x ? East : North;
  const int minus = axis == Axis::x ? West : South;
  GridField out(f.domain);

  // Up to two points per side: offset and value.
  auto side = [&](int k, int dir, double sign, double* s, double* v) {
    int cnt = 0;
    int cur = k;
    double off = 0;
    while (cnt < 2) {
      const Link& L = d.links(cur)[dir];
      if (L.node >= 0) {
        off += L.dist;
        s[cnt] = sign * off;
        v[cnt] = f.values[L.node];
        ++cnt;
        cur = L.node;
      } else {
        if (f.has_cut()) {
          s[cnt] = sign * (off + L.dist);
          v[cnt] = f.cut[L.cut];
          ++cnt;
        }
        break;
      }
    }
    return cnt;
  };

  for (int k = 0; k < d.size(); ++k) {
    double sp[2], vp[2], sm[2], vm[2];
    int np = side(k, plus, 1.0, sp, vp);
    int nm = side(k, minus, -1.0, sm, vm);
    double s[3], v[3];
    s[0] = 0;
    v[0] = f.values[k];
    int npts;
    if (np >= 1 && nm >= 1) {
      s[1] = sm[0]; v[1] = vm[0];
      s[2] = sp[0]; v[2] = vp[0];
      npts = 3;
    } else if (np == 2) {
      s[1] = sp[0]; v[1] = vp[0]; s[2] = sp[1]; v[2] = vp[1];
      npts = 3;
    } else if (nm == 2) {
      s[1] = sm[0]; v[1] = vm[0]; s[2] = sm[1]; v[2] = vm[1];
      npts = 3;
    } else if (np + nm == 1) {
      s[1] = np ? sp[0] : sm[0];
      v[1] = np ? vp[0] : vm[0];
      npts = 2;
    } else {
      throw NumericalError("differentiate: isolated node without stencil");
    }
    out.values[k] = lagrange_slope(s, v, npts);
  }
  return out;
}

double interpolate(const GridField& f, double x, double y) {
  const Domain& d = *f.domain;
  const double c = 0.5 * (d.n - 1);
  const double gx = x / d.h + c, gy = y / d.h + c;
  const int i0 = static_cast<int>(std::floor(gx)), j0 = static_cast<int>(std::floor(gy));
  const double tx = gx - i0, ty = gy - j0;

  bool full = true;
  for (int dj = -1; dj <= 2 && full; ++dj)
    for (int di = -1; di <= 2; ++di)
      if (d.index(i0 + di, j0 + dj) < 0) { full = false; break; }

  if (full) {
    auto w = [](double t, double* out) {
      out[0] = -t * (t - 1) * (t - 2) / 6.0;
      out[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
      out[2] = -(t + 1) * t * (t - 2) / 2.0;
      out[3] = (t + 1) * t * (t - 1) / 6.0;
    };
    double wx[4], wy[4];
    w(tx, wx);
    w(ty, wy);
    double r = 0;
    for (int dj = 0; dj < 4; ++dj) {
      double row = 0;
      for (int di = 0; di < 4; ++di) row += wx[di] * f.values[d.index(i0 + di - 1, j0 + dj - 1)];
      r += wy[dj] * row;
    }
    return r;
  }
  // bilinear on a complete cell; a point on a lattice line may use either side
  for (int si = 0; si <= (tx < 1e-9); ++si)
    for (int sj = 0; sj <= (ty < 1e-9); ++sj) {
      const int ci = i0 - si, cj = j0 - sj;
      const double ux = tx + si, uy = ty + sj;
      int k00 = d.index(ci, cj), k10 = d.index(ci + 1, cj);
      int k01 = d.index(ci, cj + 1), k11 = d.index(ci + 1, cj + 1);
      if (k00 < 0 || k10 < 0 || k01 < 0 || k11 < 0) continue;
      return (1 - uy) * ((1 - ux) * f.values[k00] + ux * f.values[k10]) +
             uy * ((1 - ux) * f.values[k01] + ux * f.values[k11]);
    }
  throw ValidationError("interpolate: point outside the interpolation region");
}

double second_derivative_scale(const GridField& f) {
  const Domain& d = *f.domain;
  double s = 0;
  for (int k = 0; k < d.size(); ++k) {
    if (d.in_layer(k)) continue;
    const auto& L = d.links(k);
    double fxx = f.values[L[East].node] - 2 * f.values[k] + f.values[L[West].node];
    double fyy = f.values[L[North].node] - 2 * f.values[k] + f.values[L[South].node];
    s = std::max(s, (std::abs(fxx) + std::abs(fyy)) / (d.h * d.h));
  }
  return s;
}

GridField reflect(const GridField& f) {
  const Domain& d = *f.domain;
  GridField r(f.domain);
  for (int k = 0; k < d.size(); ++k) r.values[k] = f.values[d.mirror(k)];
  if (f.has_cut()) {
    r.cut.resize(f.cut.size());
    for (int c = 0; c < f.cut.size(); ++c) r.cut[c] = f.cut[d.mirror_cut(c)];
  }
  if (f.boundary.size() == d.m) {
    r.boundary.resize(d.m);
    for (int s = 0; s < d.m; ++s) r.boundary[s] = f.boundary[(d.m - s) % d.m];
  }
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const GridField& f) {
  const Domain& d = *f.domain;
  os << "x,y,value\n";
  for (int k = 0; k < d.size(); ++k)
    os << format_double(d.x(k)) << ',' << format_double(d.y(k)) << ',' << format_double(f.values[k])
       << '\n';
}

} // namespace slu1
