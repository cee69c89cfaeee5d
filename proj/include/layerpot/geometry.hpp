#ifndef LAYERPOT_GEOMETRY_HPP
#define LAYERPOT_GEOMETRY_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "layerpot/linalg.hpp"

namespace layerpot {

// Chart parameter. Curves (n = 2) use chart 0 with a periodic in [0, 2*pi).
// Sphere-like surfaces use two polar charts: chart 0 has parameters
// (a, b) = (u, phi) with u = cos(polar angle) along the z axis; chart 1 is
// the same construction with the polar axis rotated onto the x axis.
struct Param {
  int chart = 0;
  double a = 0.0;
  double b = 0.0;
};

struct BoundaryPoint {
  Param u;
  Vec x;
  Vec nu;        // outward unit normal
  double jac = 0.0; // surface element density of the chart at u
};

struct QuadratureRule {
  std::vector<double> weights; // includes the surface element
  std::vector<BoundaryPoint> points;
  int level = 0;
  std::size_t size() const { return points.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

// Closed parametrized boundary of class C^{1,1} (the catalog shapes are
// analytic). Star-shaped with respect to inside_point(), which enables the
// radial projection used by samplers and the local polar quadrature.
class BoundaryManifold {
 public:
  virtual ~BoundaryManifold() = default;

  int dim() const { return dim_; }
  virtual Vec point(const Param& u) const = 0;
  virtual Vec normal(const Param& u) const = 0;
  virtual double jacobian(const Param& u) const = 0;
  virtual Param param_of(const Vec& x) const = 0;
  virtual std::string id() const = 0;

  BoundaryPoint at(const Param& u) const {
    return BoundaryPoint{u, point(u), normal(u), jacobian(u)};
  }

  // Projects a point near the surface onto it along the ray from the center.
  virtual Vec radial_project(const Vec& z) const = 0;

  Vec inside_point() const { return inside_; }
  double diameter() const;

  // n = 2: periodic trapezoid with 32 * 2^level nodes.
  // n = 3: Gauss-Legendre in u times periodic trapezoid in phi on chart 0,
  //        (16 * 2^level) x (32 * 2^level) nodes.
  QuadratureRule quadrature(int level) const;

 protected:
  int dim_ = 2;
  Vec inside_;
  mutable double diam_ = -1.0;
};

std::shared_ptr<BoundaryManifold> make_circle(double R);
std::shared_ptr<BoundaryManifold> make_ellipse(double a, double b);
std::shared_ptr<BoundaryManifold> make_star(double c, int k);
std::shared_ptr<BoundaryManifold> make_sphere(double R);
std::shared_ptr<BoundaryManifold> make_ellipsoid(double a, double b, double c);

// Shape ids: circle:R=1, ellipse:a=2,b=1, star:c=0.03,k=5, sphere:R=1,
// ellipsoid:a=1,b=1,c=2. Throws BadShapeParameters.
std::shared_ptr<BoundaryManifold> make_boundary(const std::string& id);
std::vector<std::string> boundary_ids();

// Function on the boundary, evaluated through an ambient extension. When the
// ambient gradient closure is absent, tangential operators recover the
// ambient partials from chart derivatives plus a zero normal derivative.
struct BoundaryFunction {
  std::function<Complex(const Vec&)> value;
  std::function<CVec(const Vec&)> gradient;
};

// nu_l d_r f - nu_r d_l f at point(u). Throws IndexOutOfRange.
Complex tangential_derivative(const BoundaryManifold& M, const BoundaryFunction& f,
                              int l, int r, const Param& u);

// grad f - nu (nu . grad f) at point(u).
CVec tangential_gradient(const BoundaryManifold& M, const BoundaryFunction& f,
                         const Param& u);

// Ambient gradient of f at point(u), either from the closure or recovered
// from chart finite differences with normal annihilation.
CVec ambient_gradient(const BoundaryManifold& M, const BoundaryFunction& f,
                      const Param& u);

// Orthonormal tangent frame at u (1 vector for curves, 2 for surfaces).
std::vector<Vec> tangent_frame(const BoundaryManifold& M, const Param& u);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace layerpot

#endif
