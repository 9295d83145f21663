#include "slu1/solver.hpp"
#include "slu1/error.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace slu1 {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::direct_solve: return "direct-solve";
    case Provenance::continuation_limit: return "continuation-limit";
    case Provenance::exact_model: return "exact-model";
  }
  return "?";
}

std::vector<double> SolverOptions::default_schedule() {
  std::vector<double> s;
  for (int k = 0; k <= 13; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
}

void SolverOptions::validate() const {
  if (!(tolerance > 0)) throw ValidationError("tolerance must be positive");
  if (!(eps_reg >= 0)) throw ValidationError("eps_reg must be non-negative");
  if (max_iterations < 1) throw ValidationError("max_iterations must be positive");
  if (!(damping > 0 && damping < 1)) throw ValidationError("damping must lie in (0,1)");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0)) throw ValidationError("schedule entries must be positive");
    if (i > 0 && !(schedule[i] < schedule[i - 1]))
      throw ValidationError("schedule must be strictly decreasing");
  }
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Discrete operator on the masked lattice. Both equations share the layout
//   Dx[flux] + 2 Dyy[w]
// with flux = asinh(w_x / s) (potential) or asinh(w / s) differenced (v).
class Operator {
public:
  Operator(const DomainPtr& d, const BoundaryData& phi, double a, SolvePath path)
      : d_(*d), path_(path) {
    const auto& cuts = d_.cuts();
    g_.resize(static_cast<int>(cuts.size()));
    for (size_t c = 0; c < cuts.size(); ++c) g_[c] = phi(cuts[c].theta);
    if (a == 0) throw ValidationError("coefficient undefined: a = 0 on the axis (use continuation)");
    // Rows within 3h of the axis use the row-cell average of the x-flux over
    // y in [y_k - h/2, y_k + h/2]: the point value asinh(p / a) on the axis
    // drifts like log(1/a), the cell average stays bounded as a -> 0.
    static const double gx[8] = {0.0198550717512319, 0.1016667612931866, 0.2372337950418355, 0.4082826787521751,
                                 0.5917173212478248, 0.7627662049581645, 0.8983332387068134, 0.9801449282487681};
    static const double gw[8] = {0.0506142681451883, 0.1111905172266872, 0.1568533229389435, 0.1813418916891809,
                                 0.1813418916891809, 0.1568533229389435, 0.1111905172266872, 0.0506142681451883};
    const double h = d_.h;
    rows_.clear();
    row_of_.assign(d_.size(), -1);
    std::map<int, int> row_index;
    for (int k = 0; k < d_.size(); ++k) {
      const double y = d_.y(k);
      if (std::abs(y) >= 2.5 * h) continue;
      auto [it, fresh] = row_index.emplace(d_.row(k), static_cast<int>(rows_.size()));
      if (fresh) {
        std::vector<std::pair<double, double>> q;
        auto add = [&](double lo, double hi) {
          // eta = lo + (hi - lo) t^2 clusters nodes at lo (a possible log singularity)
          for (int i = 0; i < 8; ++i) {
            double t = gx[i], eta = lo + (hi - lo) * t * t;
            q.push_back({gw[i] * 2 * t * (hi - lo) / h, std::hypot(eta, a)});
          }
        };
        double lo = y - 0.5 * h, hi = y + 0.5 * h;
        if (lo < 0 && hi > 0) {
          add(0.0, -lo);
          add(0.0, hi);
        } else if (lo >= 0) {
          add(lo, hi);
        } else {
          add(-hi, -lo);
        }
        rows_.push_back(std::move(q));
      }
      row_of_[k] = it->second;
    }
    s_.resize(d_.size());
    for (int k = 0; k < d_.size(); ++k) s_[k] = std::sqrt(d_.y(k) * d_.y(k) + a * a);
  }

  // x-flux asinh(p / s) at node k and its derivative in p.
  double flux(int k, double p) const {
    if (row_of_[k] < 0) return std::asinh(p / s_[k]);
    double r = 0;
    for (const auto& [w, s] : rows_[row_of_[k]]) r += w * std::asinh(p / s);
    return r;
  }
  double dflux(int k, double p) const {
    if (row_of_[k] < 0) return 1.0 / std::hypot(p, s_[k]);
    double r = 0;
    for (const auto& [w, s] : rows_[row_of_[k]]) r += w / std::hypot(p, s);
    return r;
  }

  const Eigen::VectorXd& cut_values() const { return g_; }

  // Residual, and optionally Jacobian triplets plus diagonal.
  void eval(const Eigen::VectorXd& w, Eigen::VectorXd& R, Eigen::VectorXd& diag,
            std::vector<Eigen::Triplet<double>>* trip) const {
    const int N = d_.size();
    R.resize(N);
    diag.resize(N);
    if (trip) {
      trip->clear();
      trip->reserve(5 * N);
    }
    for (int k = 0; k < N; ++k) {
      const auto& L = d_.links(k);
      auto val = [&](int dir) { return L[dir].node >= 0 ? w[L[dir].node] : g_[L[dir].cut]; };
      const double wP = w[k], wE = val(East), wW = val(West), wN = val(North), wS = val(South);
      const double hE = L[East].dist, hW = L[West].dist, hN = L[North].dist, hS = L[South].dist;
      const double cx = 2.0 / (hE + hW), cy = 4.0 / (hN + hS);
      double r, dP, dE, dW;
      if (path_ == SolvePath::potential) {
        const double pE = (wE - wP) / hE, pW = (wP - wW) / hW;
        r = cx * (flux(k, pE) - flux(k, pW));
        dE = cx * dflux(k, pE) / hE;
        dW = cx * dflux(k, pW) / hW;
        dP = -dE - dW;
      } else {
        const double AP = flux(k, wP), AE = flux(k, wE), AW = flux(k, wW);
        r = cx * ((AE - AP) / hE - (AP - AW) / hW);
        dE = cx * dflux(k, wE) / hE;
        dW = cx * dflux(k, wW) / hW;
        dP = -cx * dflux(k, wP) * (1.0 / hE + 1.0 / hW);
      }
      r += cy * ((wN - wP) / hN - (wP - wS) / hS);
      const double dN = cy / hN, dS = cy / hS;
      dP -= dN + dS;
      R[k] = r;
      diag[k] = dP;
      if (trip) {
        trip->emplace_back(k, k, dP);
        if (L[East].node >= 0) trip->emplace_back(k, L[East].node, dE);
        if (L[West].node >= 0) trip->emplace_back(k, L[West].node, dW);
        if (L[North].node >= 0) trip->emplace_back(k, L[North].node, dN);
        if (L[South].node >= 0) trip->emplace_back(k, L[South].node, dS);
      }
    }
  }

private:
  const Domain& d_;
  SolvePath path_;
  Eigen::VectorXd g_;
  Eigen::VectorXd s_;
  std::vector<std::vector<std::pair<double, double>>> rows_;  // (weight, s) quadrature per near-axis row
  std::vector<int> row_of_;
};

struct NewtonResult {
  Eigen::VectorXd w;
  int iterations = 0;
  double residual = 0;
};

NewtonResult newton(const Operator& op, Eigen::VectorXd w, const SolverOptions& opts) {
  const int N = static_cast<int>(w.size());
  Eigen::VectorXd R, diag, Rt, dt;
  std::vector<Eigen::Triplet<double>> trip;
  SpMat J(N, N);
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  bool analyzed = false;
  std::vector<double> history;

  op.eval(w, R, diag, &trip);
  for (int it = 0;; ++it) {
    Eigen::VectorXd scale = diag.cwiseAbs().cwiseInverse();
    const double res = (R.cwiseProduct(scale)).lpNorm<Eigen::Infinity>();
    history.push_back(res);
    if (!std::isfinite(res)) throw NewtonDivergence("non-finite residual", history);
    if (res <= opts.tolerance) return {w, it, res};
    if (it >= opts.max_iterations) {
      std::ostringstream os;
      os << "Newton did not converge in " << opts.max_iterations << " iterations (residual " << res << ")";
      throw NewtonDivergence(os.str(), history);
    }

    J.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed) {
      lu.analyzePattern(J);
      analyzed = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) throw NewtonDivergence("singular Jacobian", history);
    Eigen::VectorXd delta = lu.solve(-R);

    const double merit = R.cwiseProduct(scale).norm();
    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd wt;
    while (t >= opts.min_step) {
      wt = w + t * delta;
      op.eval(wt, Rt, dt, nullptr);
      const double mt = Rt.cwiseProduct(scale).norm();
      if (std::isfinite(mt) && mt <= (1.0 - 1e-4 * t) * merit) {
        accepted = true;
        break;
      }
      t *= opts.damping;
    }
    if (!accepted) {
      // Stagnation at rounding level counts as convergence if close enough.
      if (res <= 100 * opts.tolerance) return {w, it, res};
      throw NewtonDivergence("line search failed", history);
    }
    w = wt;
    op.eval(w, R, diag, &trip);
  }
}

// Boundary trace of a derived field by quadratic radial extrapolation from
// interpolated values at radii 1-3h, 1-4h, 1-5h.
Eigen::VectorXd extrapolated_trace(const GridField& f) {
  const Domain& d = *f.domain;
  Eigen::VectorXd b(d.m);
  const double r0 = d.interp_radius();
  for (int s = 0; s < d.m; ++s) {
    const double t = d.theta(s), c = std::cos(t), sn = std::sin(t);
    double v[3];
    for (int q = 0; q < 3; ++q) {
      double r = r0 - q * d.h;
      v[q] = interpolate(f, r * c, r * sn);
    }
    // offsets from the boundary, in units of h: 3, 4, 5
    b[s] = 10.0 * v[0] - 15.0 * v[1] + 6.0 * v[2];
  }
  return b;
}

GridField boundary_field(const DomainPtr& d, const Eigen::VectorXd& w, const Operator& op,
                         const BoundaryData& phi) {
  GridField f(d);
  f.values = w;
  f.cut = op.cut_values();
  f.boundary.resize(d->m);
  for (int s = 0; s < d->m; ++s) f.boundary[s] = phi(d->theta(s));
  return f;
}

SolutionPair derive_from_potential(const DomainPtr& d, GridField f, double a) {
  SolutionPair p;
  p.a = a;
  p.v = differentiate(f, Axis::x);
  p.u = differentiate(f, Axis::y);
  p.v.boundary = extrapolated_trace(p.v);
  p.u.boundary = extrapolated_trace(p.u);
  p.f = std::move(f);
  (void)d;
  return p;
}

int node_at(const Domain& d, Eigen::Vector2d pt) {
  const double c = 0.5 * (d.n - 1);
  const int i = static_cast<int>(std::lround(pt.x() / d.h + c));
  const int j = static_cast<int>(std::lround(pt.y() / d.h + c));
  const int k = d.index(i, j);
  if (k < 0 || std::abs(d.x(k) - pt.x()) > 1e-12 || std::abs(d.y(k) - pt.y()) > 1e-12)
    throw ValidationError("basepoint must be a grid node");
  return k;
}

// u from du = gx dx + gy dy by trapezoidal staircase integration; returns
// the discrepancy between row-first and column-first paths.
// Vertical steps use `col_step(from, to)` when given, trapezoid on gy otherwise.
double integrate_staircase(const Domain& d, const GridField& gx, const GridField& gy, int base,
                           GridField& u, const std::function<double(int, int)>& col_step = {}) {
  const int N = d.size();
  const int i0 = d.col(base), j0 = d.row(base);
  const double h = d.h;
  Eigen::VectorXd pa = Eigen::VectorXd::Constant(N, NAN), pb = pa;

  auto walk_row = [&](int start, const Eigen::VectorXd& vals, Eigen::VectorXd& out, bool store_all) {
    // walks the row of `start` both ways, integrating gx
    (void)store_all;
    const int j = d.row(start);
    out[start] = vals[start];
    for (int dir : {1, -1}) {
      int prev = start;
      for (int i = d.col(start) + dir;; i += dir) {
        int k = d.index(i, j);
        if (k < 0) break;
        out[k] = out[prev] + dir * 0.5 * h * (gx[prev] + gx[k]);
        prev = k;
      }
    }
  };
  auto walk_col = [&](int start, Eigen::VectorXd& out) {
    const int i = d.col(start);
    for (int dir : {1, -1}) {
      int prev = start;
      for (int j = d.row(start) + dir;; j += dir) {
        int k = d.index(i, j);
        if (k < 0) break;
        out[k] = out[prev] + (col_step ? col_step(prev, k) : dir * 0.5 * h * (gy[prev] + gy[k]));
        prev = k;
      }
    }
  };

  // Path A: along the base row, then along columns.
  Eigen::VectorXd rowv = Eigen::VectorXd::Constant(N, NAN);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(N);
  walk_row(base, zero, rowv, true);
  for (int i = 0; i < d.n; ++i) {
    int k = d.index(i, j0);
    if (k < 0) continue;
    pa[k] = rowv[k];
    walk_col(k, pa);
  }
  // Path B: along the base column, then along rows.
  Eigen::VectorXd colv = Eigen::VectorXd::Constant(N, NAN);
  colv[base] = 0;
  walk_col(base, colv);
  for (int j = 0; j < d.n; ++j) {
    int k = d.index(i0, j);
    if (k < 0) continue;
    pb[k] = colv[k];
    walk_row(k, colv, pb, false);
  }

  double disc = 0;
  for (int k = 0; k < N; ++k) {
    bool a = std::isfinite(pa[k]), b = std::isfinite(pb[k]);
    if (a && b) {
      u.values[k] = 0.5 * (pa[k] + pb[k]);
      disc = std::max(disc, std::abs(pa[k] - pb[k]));
    } else if (a || b) {
      u.values[k] = a ? pa[k] : pb[k];
    } else {
      throw ValidationError("basepoint does not reach every node by a staircase path");
    }
  }
  return disc;
}

SolutionPair finish_v(const DomainPtr& d, const Eigen::VectorXd& w, const Operator& op,
                      const BoundaryData& phi, double a_coef, int base) {
  SolutionPair p;
  p.a = a_coef;
  p.v = boundary_field(d, w, op, phi);
  // gx = v_y, gy = -1/2 d/dx asinh(v / s)
  GridField gx = differentiate(p.v, Axis::y);
  GridField A(d);
  for (int k = 0; k < d->size(); ++k) A.values[k] = std::asinh(w[k] / std::hypot(d->y(k), a_coef));
  A.cut.resize(p.v.cut.size());
  for (int c = 0; c < p.v.cut.size(); ++c)
    A.cut[c] = std::asinh(p.v.cut[c] / std::hypot(d->cuts()[c].y, a_coef));
  GridField gy = differentiate(A, Axis::x);
  gy.values *= -0.5;
  // Near the axis u_y = -1/2 v_x (v^2 + y^2 + a^2)^(-1/2) peaks like 1/a where
  // v vanishes; there the step is integrated exactly for v, v_x linear in y.
  GridField vx = differentiate(p.v, Axis::x);
  const double band = 2.5 * d->h;
  auto col_step = [&](int ka, int kb) {
    const double ya = d->y(ka), yb = d->y(kb);
    if (std::min(std::abs(ya), std::abs(yb)) >= band) return 0.5 * (yb - ya) * (gy[ka] + gy[kb]);
    const double dy = yb - ya, va = w[ka], dv = w[kb] - w[ka], pa = vx[ka], dp = vx[kb] - vx[ka];
    // q(t) = A t^2 + B t + C along the step, 4AC - B^2 = 4((va dy - ya dv)^2 + a^2 A) > 0
    const double A = dv * dv + dy * dy, B = 2 * (va * dv + ya * dy), C = va * va + ya * ya + a_coef * a_coef;
    const double disc = std::sqrt(4 * ((va * dy - ya * dv) * (va * dy - ya * dv) + a_coef * a_coef * A));
    const double sA = std::sqrt(A);
    const double I0 = (std::asinh((2 * A + B) / disc) - std::asinh(B / disc)) / sA;
    const double I1 = (std::sqrt(A + B + C) - std::sqrt(C)) / A - 0.5 * B / A * I0;
    return -0.5 * dy * (pa * I0 + dp * I1);
  };
  p.u = GridField(d);
  p.path_discrepancy = integrate_staircase(*d, gx, gy, base, p.u, col_step);
  p.u.boundary = extrapolated_trace(p.u);
  return p;
}

double path_threshold(const SolutionPair& p, double tol) {
  const double h = p.domain()->h;
  const double g = 1.0 + p.v.values.cwiseAbs().maxCoeff() + p.u.values.cwiseAbs().maxCoeff();
  return 10.0 * std::max(tol, h * h * g);
}

double c0_distance(const SolutionPair& a, const SolutionPair& b) {
  return std::max((a.u.values - b.u.values).lpNorm<Eigen::Infinity>(),
                  (a.v.values - b.v.values).lpNorm<Eigen::Infinity>());
}

} // namespace

Eigen::VectorXd potential_residual(const DomainPtr& d, const BoundaryData& phi, double a,
                                   const Eigen::VectorXd& f, double eps_reg) {
  Operator op(d, phi, std::max(std::abs(a), eps_reg), SolvePath::potential);
  Eigen::VectorXd R, diag;
  op.eval(f, R, diag, nullptr);
  return R;
}

SolutionPair solve_potential(const DomainPtr& d, const BoundaryData& phi, double a,
                             const SolverOptions& opts, const Eigen::VectorXd* initial) {
  opts.validate();
  if (a == 0) throw ValidationError("solve_potential needs a != 0 (use continuation_to_zero)");
  Operator op(d, phi, std::abs(a), SolvePath::potential);
  Eigen::VectorXd w0 = initial ? *initial : Eigen::VectorXd::Zero(d->size());
  if (w0.size() != d->size()) throw ValidationError("initial guess has wrong size");
  NewtonResult nr = newton(op, w0, opts);
  SolutionPair p = derive_from_potential(d, boundary_field(d, nr.w, op, phi), a);
  p.provenance = Provenance::direct_solve;
  p.log.push_back({a, nr.iterations, nr.residual, 0.0});
  return p;
}

SolutionPair solve_v(const DomainPtr& d, const BoundaryData& phi, double a, Eigen::Vector2d basepoint,
                     const SolverOptions& opts, const Eigen::VectorXd* initial) {
  opts.validate();
  if (a == 0) throw ValidationError("solve_v needs a != 0 (use continuation_to_zero)");
  const int base = node_at(*d, basepoint);
  Operator op(d, phi, std::abs(a), SolvePath::v_equation);
  Eigen::VectorXd w0 = initial ? *initial : Eigen::VectorXd::Zero(d->size());
  if (w0.size() != d->size()) throw ValidationError("initial guess has wrong size");
  NewtonResult nr = newton(op, w0, opts);
  SolutionPair p = finish_v(d, nr.w, op, phi, std::abs(a), base);
  p.a = a;
  p.provenance = Provenance::direct_solve;
  p.log.push_back({a, nr.iterations, nr.residual, 0.0});
  const double thr = path_threshold(p, opts.tolerance);
  if (p.path_discrepancy > thr) {
    std::ostringstream os;
    os << "path integration inconsistency " << p.path_discrepancy << " exceeds " << thr;
    throw NumericalError(os.str());
  }
  return p;
}

SolutionPair continuation_to_zero(const DomainPtr& d, const BoundaryData& phi, const SolverOptions& opts,
                                  const Eigen::VectorXd* initial) {
  opts.validate();
  if (opts.schedule.empty()) throw ValidationError("empty continuation schedule");
  const bool vpath = opts.path == SolvePath::v_equation;
  if (vpath) {
    const double scale = 1e-12 * (1.0 + std::abs(phi(0.0)) + std::abs(phi(M_PI)));
    if (std::abs(phi(0.0)) <= scale || std::abs(phi(M_PI)) <= scale)
      throw ValidationError("v-path continuation needs phi != 0 at the axis boundary points");
  }
  const int base = vpath ? node_at(*d, {0.0, 0.0}) : -1;

  SolutionPair prev, cur;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d->size());
  if (initial) {
    if (initial->size() != d->size()) throw ValidationError("initial guess has the wrong size");
    w = *initial;
  }
  std::vector<StageLog> log;
  for (size_t i = 0; i < opts.schedule.size(); ++i) {
    const double a = opts.schedule[i];
    const double a_eff = std::max(a, opts.eps_reg);
    Operator op(d, phi, a_eff, opts.path);
    NewtonResult nr;
    try {
      nr = newton(op, w, opts);
    } catch (const NewtonDivergence& e) {
      std::ostringstream os;
      os << "continuation stage a=" << a << ": " << e.what();
      throw NewtonDivergence(os.str(), e.residuals);
    }
    w = nr.w;
    cur = vpath ? finish_v(d, w, op, phi, a_eff, base)
                : derive_from_potential(d, boundary_field(d, w, op, phi), a_eff);
    StageLog st{a, nr.iterations, nr.residual, i == 0 ? 0.0 : c0_distance(cur, prev)};
    log.push_back(st);
    prev = cur;
  }
  cur.a = 0;
  cur.provenance = Provenance::continuation_limit;
  cur.log = log;
  if (log.size() >= 2 && log.back().c0_increment > opts.cauchy_tolerance) {
    std::ostringstream os;
    os << "continuation not Cauchy; C0 increments:";
    for (const auto& s : log) os << ' ' << s.c0_increment;
    throw NumericalError(os.str());
  }
  return cur;
}

PdeResidual pde_residual(const SolutionPair& pair, double band) {
  const Domain& d = *pair.domain();
  if (band < 0) band = 2.0 * d.h;
  GridField ux = differentiate(pair.u, Axis::x), uy = differentiate(pair.u, Axis::y);
  GridField vx = differentiate(pair.v, Axis::x), vy = differentiate(pair.v, Axis::y);
  PdeResidual r;
  r.r1 = GridField(pair.domain());
  r.r2 = GridField(pair.domain());
  r.mask.assign(d.size(), 0);
  for (int k = 0; k < d.size(); ++k) {
    const double y = d.y(k), v = pair.v.values[k];
    r.r1.values[k] = ux.values[k] - vy.values[k];
    r.r2.values[k] = vx.values[k] + 2.0 * std::sqrt(v * v + y * y + pair.a * pair.a) * uy.values[k];
    if (pair.a == 0 && std::abs(y) <= band + 1e-12 * d.h) r.mask[k] = 1;
    double m = std::max(std::abs(r.r1.values[k]), std::abs(r.r2.values[k]));
    if (r.mask[k])
      r.max_masked = std::max(r.max_masked, m);
    else
      r.max_unmasked = std::max(r.max_unmasked, m);
  }
  return r;
}

SolutionPair sample_pair(const DomainPtr& d, const ExactSolutionId& id) {
  SolutionPair p;
  p.a = id.system_a();
  p.provenance = Provenance::exact_model;
  p.u = sample(d, [&](double x, double y) { return id(x, y).u; });
  p.v = sample(d, [&](double x, double y) { return id(x, y).v; });
  if (id.variant == ExactSolutionId::Variant::two_sheet) {
    p.f = sample(d, two_sheet_potential);
  } else if (id.variant == ExactSolutionId::Variant::affine) {
    p.f = sample(d, [&](double x, double y) { return id.alpha * x * y + id.beta * y + id.gamma * x; });
  }
  return p;
}

MaxPrincipleReport check_max_principle(const SolutionPair& pair) {
  const Domain& d = *pair.domain();
  auto one = [&](const GridField& f, double& excess, double& allowance) {
    double imax = -INFINITY, imin = INFINITY, lmax = -INFINITY, lmin = INFINITY;
    for (int k = 0; k < d.size(); ++k) {
      double v = f.values[k];
      if (d.in_layer(k)) {
        lmax = std::max(lmax, v);
        lmin = std::min(lmin, v);
      } else {
        imax = std::max(imax, v);
        imin = std::min(imin, v);
      }
    }
    excess = std::max({0.0, imax - lmax, lmin - imin});
    allowance = 5.0 * d.h * d.h * second_derivative_scale(f);
  };
  MaxPrincipleReport r;
  one(pair.u, r.excess_u, r.allowance_u);
  one(pair.v, r.excess_v, r.allowance_v);
  return r;
}

} // namespace slu1
