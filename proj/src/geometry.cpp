#include "layerpot/geometry.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "layerpot/errors.hpp"

namespace layerpot {

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * M_PI);
  if (t < 0.0) t += 2.0 * M_PI;
  return t;
}

} // namespace

// Newton iteration on the recurrence; machine precision for the orders used
// here.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

namespace {

// ---------------------------------------------------------------- curves --

class Curve : public BoundaryManifold {
 public:
  Curve() { dim_ = 2; inside_ = Vec(0.0, 0.0); }

  Vec normal(const Param& u) const override {
    Vec t = tangent(u.a);
    double m = norm(t);
    return Vec(t[1] / m, -t[0] / m);
  }
  double jacobian(const Param& u) const override { return norm(tangent(u.a)); }
  Vec radial_project(const Vec& z) const override { return point(param_of(z)); }

 protected:
  virtual Vec tangent(double t) const = 0;
};

class Circle : public Curve {
 public:
  explicit Circle(double R) : R_(R) {
    if (!(R > 0.0)) throw BadShapeParameters("circle: parameter R must be positive");
  }
  Vec point(const Param& u) const override {
    return Vec(R_ * std::cos(u.a), R_ * std::sin(u.a));
  }
  Vec normal(const Param& u) const override {
    return Vec(std::cos(u.a), std::sin(u.a));
  }
  double jacobian(const Param&) const override { return R_; }
  Param param_of(const Vec& x) const override {
    return Param{0, wrap_angle(std::atan2(x[1], x[0])), 0.0};
  }
  std::string id() const override {
    std::ostringstream s;
    s << "circle:R=" << R_;
    return s.str();
  }

 protected:
  Vec tangent(double t) const override {
    return Vec(-R_ * std::sin(t), R_ * std::cos(t));
  }

 private:
  double R_;
};

class Ellipse : public Curve {
 public:
  Ellipse(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0)) throw BadShapeParameters("ellipse: parameter a must be positive");
    if (!(b > 0.0)) throw BadShapeParameters("ellipse: parameter b must be positive");
  }
  Vec point(const Param& u) const override {
    return Vec(a_ * std::cos(u.a), b_ * std::sin(u.a));
  }
  Param param_of(const Vec& x) const override {
    return Param{0, wrap_angle(std::atan2(x[1] / b_, x[0] / a_)), 0.0};
  }
  std::string id() const override {
    std::ostringstream s;
    s << "ellipse:a=" << a_ << ",b=" << b_;
    return s.str();
  }

 protected:
  Vec tangent(double t) const override {
    return Vec(-a_ * std::sin(t), b_ * std::cos(t));
  }

 private:
  double a_, b_;
};

class Star : public Curve {
 public:
  Star(double c, int k) : c_(c), k_(k) {
    if (!(c > 0.0)) throw BadShapeParameters("star: parameter c must be positive");
    if (k < 1) throw BadShapeParameters("star: parameter k must be a positive integer");
    if (!(c * (1.0 + k * k) < 1.0))
      throw BadShapeParameters("star: parameter c must satisfy c < 1/(1+k^2)");
  }
  Vec point(const Param& u) const override {
    double r = rho(u.a);
    return Vec(r * std::cos(u.a), r * std::sin(u.a));
  }
  Param param_of(const Vec& x) const override {
    return Param{0, wrap_angle(std::atan2(x[1], x[0])), 0.0};
  }
  std::string id() const override {
    std::ostringstream s;
    s << "star:c=" << c_ << ",k=" << k_;
    return s.str();
  }

 protected:
  Vec tangent(double t) const override {
    double r = rho(t), dr = -c_ * k_ * std::sin(k_ * t);
    return Vec(dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t));
  }

 private:
  double rho(double t) const { return 1.0 + c_ * std::cos(k_ * t); }
  double c_;
  int k_;
};

// -------------------------------------------------------------- surfaces --

// Ellipsoid (x1/a)^2 + (x2/b)^2 + (x3/c)^2 = 1; the sphere is the equal-axes
// case. Two polar charts cover the surface; quadrature lives on chart 0.
class Ellipsoid : public BoundaryManifold {
 public:
  Ellipsoid(double a, double b, double c, bool sphere) : a_(a), b_(b), c_(c), sphere_(sphere) {
    const char* nm = sphere ? "sphere" : "ellipsoid";
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
      throw BadShapeParameters(std::string(nm) + ": semiaxes must be positive");
    dim_ = 3;
    inside_ = Vec(0.0, 0.0, 0.0);
  }

  Vec point(const Param& u) const override {
    double w = std::sqrt(std::max(0.0, 1.0 - u.a * u.a));
    if (u.chart == 0)
      return Vec(a_ * w * std::cos(u.b), b_ * w * std::sin(u.b), c_ * u.a);
    return Vec(a_ * u.a, b_ * w * std::cos(u.b), c_ * w * std::sin(u.b));
  }

  Vec normal(const Param& u) const override { return normal_at(point(u)); }

  Vec normal_at(const Vec& x) const {
    Vec g(x[0] / (a_ * a_), x[1] / (b_ * b_), x[2] / (c_ * c_));
    return normalized(g);
  }

  double jacobian(const Param& u) const override {
    double w2 = std::max(0.0, 1.0 - u.a * u.a);
    double cb = std::cos(u.b), sb = std::sin(u.b);
    if (u.chart == 0)
      return std::sqrt(b_ * b_ * c_ * c_ * w2 * cb * cb +
                       a_ * a_ * c_ * c_ * w2 * sb * sb + a_ * a_ * b_ * b_ * u.a * u.a);
    return std::sqrt(b_ * b_ * c_ * c_ * u.a * u.a +
                     a_ * a_ * c_ * c_ * w2 * cb * cb + a_ * a_ * b_ * b_ * w2 * sb * sb);
  }

  Param param_of(const Vec& z) const override {
    double m = scaled_norm(z);
    Vec zh(z[0] / (a_ * m), z[1] / (b_ * m), z[2] / (c_ * m)); // unit vector
    if (std::abs(zh[2]) <= 0.8)
      return Param{0, zh[2], wrap_angle(std::atan2(zh[1], zh[0]))};
    return Param{1, zh[0], wrap_angle(std::atan2(zh[2], zh[1]))};
  }

  Vec radial_project(const Vec& z) const override {
    double m = scaled_norm(z);
    return (1.0 / m) * z;
  }

  std::string id() const override {
    std::ostringstream s;
    if (sphere_)
      s << "sphere:R=" << a_;
    else
      s << "ellipsoid:a=" << a_ << ",b=" << b_ << ",c=" << c_;
    return s.str();
  }

 private:
  double scaled_norm(const Vec& z) const {
    double q = (z[0] / a_) * (z[0] / a_) + (z[1] / b_) * (z[1] / b_) +
               (z[2] / c_) * (z[2] / c_);
    return std::sqrt(q);
  }
  double a_, b_, c_;
  bool sphere_;
};

} // namespace

double BoundaryManifold::diameter() const {
  if (diam_ > 0.0) return diam_;
  QuadratureRule rule = quadrature(2);
  std::size_t stride = 1;
  while (rule.size() / stride > 1024) stride *= 2;
  double d = 0.0;
  for (std::size_t i = 0; i < rule.size(); i += stride)
    for (std::size_t j = i + stride; j < rule.size(); j += stride)
      d = std::max(d, norm(rule.points[i].x - rule.points[j].x));
  diam_ = d;
  return diam_;
}

QuadratureRule BoundaryManifold::quadrature(int level) const {
  if (level < 0) level = 0;
  QuadratureRule rule;
  rule.level = level;
  if (dim_ == 2) {
    int N = 32 << level;
    rule.points.reserve(static_cast<std::size_t>(N));
    rule.weights.reserve(static_cast<std::size_t>(N));
    double h = 2.0 * M_PI / N;
    for (int i = 0; i < N; ++i) {
      Param u{0, h * i, 0.0};
      BoundaryPoint p = at(u);
      rule.points.push_back(p);
      rule.weights.push_back(h * p.jac);
    }
    return rule;
  }
  int nu = 16 << level, nphi = 32 << level;
  std::vector<double> gx, gw;
  gauss_legendre(nu, gx, gw);
  double hphi = 2.0 * M_PI / nphi;
  rule.points.reserve(static_cast<std::size_t>(nu * nphi));
  rule.weights.reserve(static_cast<std::size_t>(nu * nphi));
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nphi; ++j) {
      Param u{0, gx[static_cast<std::size_t>(i)], hphi * j};
      BoundaryPoint p = at(u);
      rule.points.push_back(p);
      rule.weights.push_back(gw[static_cast<std::size_t>(i)] * hphi * p.jac);
    }
  }
  return rule;
}

std::shared_ptr<BoundaryManifold> make_circle(double R) {
  return std::make_shared<Circle>(R);
}
std::shared_ptr<BoundaryManifold> make_ellipse(double a, double b) {
  return std::make_shared<Ellipse>(a, b);
}
std::shared_ptr<BoundaryManifold> make_star(double c, int k) {
  return std::make_shared<Star>(c, k);
}
std::shared_ptr<BoundaryManifold> make_sphere(double R) {
  return std::make_shared<Ellipsoid>(R, R, R, true);
}
std::shared_ptr<BoundaryManifold> make_ellipsoid(double a, double b, double c) {
  return std::make_shared<Ellipsoid>(a, b, c, false);
}

namespace {

std::map<std::string, double> parse_shape_kv(const std::string& spec) {
  std::map<std::string, double> kv;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw BadShapeParameters("malformed boundary parameter: " + item);
    try {
      kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw BadShapeParameters("malformed boundary parameter value: " + item);
    }
  }
  return kv;
}

double need_shape(const std::map<std::string, double>& kv, const std::string& key,
                  const std::string& kind) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw BadShapeParameters(kind + " requires parameter " + key);
  return it->second;
}

} // namespace

std::shared_ptr<BoundaryManifold> make_boundary(const std::string& id) {
  std::string name = id, spec;
  auto colon = id.find(':');
  if (colon != std::string::npos) {
    name = id.substr(0, colon);
    spec = id.substr(colon + 1);
  }
  auto kv = parse_shape_kv(spec);
  if (name == "circle") return make_circle(need_shape(kv, "R", name));
  if (name == "ellipse")
    return make_ellipse(need_shape(kv, "a", name), need_shape(kv, "b", name));
  if (name == "star")
    return make_star(need_shape(kv, "c", name),
                     static_cast<int>(std::lround(need_shape(kv, "k", name))));
  if (name == "sphere") return make_sphere(need_shape(kv, "R", name));
  if (name == "ellipsoid")
    return make_ellipsoid(need_shape(kv, "a", name), need_shape(kv, "b", name),
                          need_shape(kv, "c", name));
  throw BadShapeParameters("unknown boundary id: " + id);
}

std::vector<std::string> boundary_ids() {
  return {"circle:R=1", "ellipse:a=2,b=1", "star:c=0.03,k=5", "sphere:R=1",
          "ellipsoid:a=1,b=1,c=2"};
}

std::vector<Vec> tangent_frame(const BoundaryManifold& M, const Param& u) {
  Vec nu = M.normal(u);
  if (M.dim() == 2) {
    return {Vec(-nu[1], nu[0])};
  }
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(nu[i]) < std::abs(nu[axis])) axis = i;
  Vec e = Vec::zero(3);
  e[axis] = 1.0;
  Vec t1 = normalized(e - dot(e, nu) * nu);
  Vec t2 = cross(nu, t1);
  return {t1, t2};
}

CVec ambient_gradient(const BoundaryManifold& M, const BoundaryFunction& f,
                      const Param& u) {
  if (f.gradient) return f.gradient(M.point(u));
  // Recover ambient partials from chart derivatives and a vanishing normal
  // derivative; the tangential operators are extension independent.
  int n = M.dim();
  double h = 1e-6;
  Vec nu = M.normal(u);
  Mat A = Mat::zero(n);
  CVec rhs = CVec::zero(n);
  int rows = n - 1;
  for (int kdir = 0; kdir < rows; ++kdir) {
    Param up = u, um = u;
    if (kdir == 0) {
      up.a += h;
      um.a -= h;
    } else {
      up.b += h;
      um.b -= h;
    }
    Vec xp = M.point(up), xm = M.point(um);
    Vec tvec = (1.0 / (2.0 * h)) * (xp - xm);
    Complex df = (f.value(xp) - f.value(xm)) / (2.0 * h);
    for (int j = 0; j < n; ++j) A(kdir, j) = tvec[j];
    rhs[kdir] = df;
  }
  for (int j = 0; j < n; ++j) A(rows, j) = nu[j];
  rhs[rows] = 0.0;
  Mat Ainv = inverse(A);
  CVec g = CVec::zero(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += Ainv(i, j) * rhs[j];
    g[i] = s;
  }
  return g;
}

Complex tangential_derivative(const BoundaryManifold& M, const BoundaryFunction& f,
                              int l, int r, const Param& u) {
  int n = M.dim();
  if (l < 0 || l >= n || r < 0 || r >= n)
    throw IndexOutOfRange("tangential derivative index out of range");
  CVec g = ambient_gradient(M, f, u);
  Vec nu = M.normal(u);
  return nu[l] * g[r] - nu[r] * g[l];
}

CVec tangential_gradient(const BoundaryManifold& M, const BoundaryFunction& f,
                         const Param& u) {
  CVec g = ambient_gradient(M, f, u);
  Vec nu = M.normal(u);
  Complex gn = dot(g, nu);
  CVec out = g;
  for (int i = 0; i < M.dim(); ++i) out[i] -= gn * nu[i];
  return out;
}

} // namespace layerpot
