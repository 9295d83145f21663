#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace slu1 {

enum class DomainKind { unit_disc, superellipse_excluded, mapped_convex };

DomainKind parse_domain_kind(const std::string& s);
std::string to_string(DomainKind k);

/// Direction indices for Link arrays.
enum Dir { East = 0, West = 1, North = 2, South = 3 };

/// Neighbour of a node along one lattice direction: either another node at
/// distance h, or a boundary crossing ("cut") at distance `dist`.
struct Link {
  int node = -1;
  int cut = -1;
  double dist = 0.0;
};

struct CutPoint {
  double x = 0, y = 0, theta = 0;
  int owner = -1;  ///< node whose link ends here
  int dir = 0;
};

/// Masked Cartesian lattice on a strictly convex domain, with cut-cell
/// boundary crossings. Nodes are ordered by row (y), then column (x).
class Domain {
public:
  DomainKind kind = DomainKind::unit_disc;
  int n = 0;       ///< lattice points per axis
  int m = 0;       ///< boundary samples
  double h = 0;    ///< lattice spacing
  bool symmetric = true;

  int size() const { return static_cast<int>(ij_.size()); }
  double coord(int i) const { return (i - 0.5 * (n - 1)) * h; }
  double x(int k) const { return coord(ij_[k][0]); }
  double y(int k) const { return coord(ij_[k][1]); }
  int col(int k) const { return ij_[k][0]; }
  int row(int k) const { return ij_[k][1]; }

  /// Node index of lattice point (i,j), or -1 if outside the mask.
  int index(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n) return -1;
    return lookup_[static_cast<size_t>(j) * n + i];
  }
  /// Node index of (x, -y).
  int mirror(int k) const { return index(ij_[k][0], n - 1 - ij_[k][1]); }
  /// Node at the origin, or -1 for even n.
  int origin() const { return (n % 2) ? index(n / 2, n / 2) : -1; }

  const std::array<Link, 4>& links(int k) const { return links_[k]; }
  const std::vector<CutPoint>& cuts() const { return cuts_; }
  /// Cut point of (x, -y) matching cut c.
  int mirror_cut(int c) const { return cut_mirror_[c]; }
  /// True if some 8-neighbour of the node lies outside the mask.
  bool in_layer(int k) const { return layer_[k] != 0; }

  double theta(int s) const;
  /// Boundary point at parameter theta.
  Eigen::Vector2d boundary_point(double theta) const;
  /// Largest radius r such that bicubic stencils are available on the circle
  /// of radius r about the origin.
  double interp_radius() const { return 1.0 - 3.0 * h; }
  /// True if (x,y) lies strictly inside the domain.
  bool contains(double x, double y) const;

  friend std::shared_ptr<const Domain> build_domain(DomainKind, int, int);

private:
  std::vector<std::array<int, 2>> ij_;
  std::vector<int> lookup_;
  std::vector<std::array<Link, 4>> links_;
  std::vector<CutPoint> cuts_;
  std::vector<int> cut_mirror_;
  std::vector<char> layer_;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Builds the masked lattice. Requires odd n >= 17 (so the axis y = 0 is a
/// lattice row) and m >= 64.
DomainPtr build_domain(DomainKind kind, int n, int m);

/// Sampled function on a Domain: nodal values, optional values at the cut
/// points, optional boundary trace at the m boundary samples.
template <class Scalar>
struct BasicGridField {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  DomainPtr domain;
  Vector values;
  Vector cut;       ///< empty or one entry per cut point
  Vector boundary;  ///< empty or one entry per boundary sample

  BasicGridField() = default;
  explicit BasicGridField(DomainPtr d)
      : domain(std::move(d)), values(Vector::Zero(domain->size())) {}

  bool has_cut() const { return cut.size() > 0; }
  Scalar operator[](int k) const { return values[k]; }
  Scalar& operator[](int k) { return values[k]; }
};

using GridField = BasicGridField<double>;

/// Samples g(x,y) at nodes, cuts and boundary samples.
GridField sample(const DomainPtr& d, const std::function<double(double, double)>& g);

enum class Axis { x, y };

/// Second-order derivative along an axis. Centered at interior nodes; at the
/// boundary layer uses cut values when present, otherwise one-sided stencils.
GridField differentiate(const GridField& f, Axis axis);

/// Bicubic (tensor cubic Lagrange) interpolation; falls back to bilinear
/// where the 4x4 stencil leaves the mask. Throws outside the lattice hull.
double interpolate(const GridField& f, double x, double y);

/// Max over non-layer nodes of |f_xx| + |f_yy| (divided differences).
double second_derivative_scale(const GridField& f);

/// Field (x,y) -> f(x,-y) on a symmetric domain.
GridField reflect(const GridField& f);

/// CSV dump: header "x,y,value", 17 significant digits, rows in node order.
void write_csv(std::ostream& os, const GridField& f);
std::string format_double(double v);

} // namespace slu1
