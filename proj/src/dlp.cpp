#include "layerpot/dlp.hpp"

#include <algorithm>
#include <cmath>

#include "layerpot/errors.hpp"

namespace layerpot {

namespace {

struct KernelGeometry {
  Vec z;      // x - y
  double r;   // |z|
  Vec theta;  // z / r
  double rho; // |T^{-1} z|
  Vec a2nu;   // a2 nu(y)
  Complex nu_a1; // nu(y) . a1
};

KernelGeometry kernel_geometry(const FundamentalSolution& S, const BoundaryPoint& x,
                               const BoundaryPoint& y) {
  KernelGeometry g;
  g.z = x.x - y.x;
  g.r = norm(g.z);
  if (g.r == 0.0) throw CoincidentPoints("double layer kernel at coincident points");
  g.theta = (1.0 / g.r) * g.z;
  g.rho = norm(mat_vec(S.Tinv, g.z));
  g.a2nu = mat_vec(S.coeffs.a2, y.nu);
  g.nu_a1 = dot(S.coeffs.a1, y.nu);
  return g;
}

} // namespace

Complex dlp_kernel(const FundamentalSolution& S, const BoundaryPoint& x,
                   const BoundaryPoint& y) {
  int n = S.dim();
  KernelGeometry g = kernel_geometry(S, x, y);
  double sn = sphere_measure(n);
  Complex k = -dot(g.z, y.nu) / (sn * S.sqrt_det * ipow(g.rho, n));
  if (!S.A2.zero()) {
    double pre = (n == 3) ? 1.0 / g.r : 1.0; // |x-y|^{2-n}
    k -= pre * dot(S.A2.value(g.theta, g.r), g.a2nu);
  }
  if (!S.B1.zero()) k -= dot(S.B1.gradient(g.z), g.a2nu) * std::log(g.r);
  if (!S.C.zero()) k -= dot(S.C.gradient(g.z), g.a2nu);
  if (g.nu_a1 != Complex(0.0)) k -= g.nu_a1 * value(S, g.z);
  return k;
}

Complex dlp_kernel_reference(const FundamentalSolution& S, const BoundaryPoint& x,
                             const BoundaryPoint& y) {
  KernelGeometry g = kernel_geometry(S, x, y);
  Complex k = -dot(gradient(S, g.z), g.a2nu);
  if (g.nu_a1 != Complex(0.0)) k -= g.nu_a1 * value(S, g.z);
  return k;
}

CVec dlp_kernel_gradient_x(const FundamentalSolution& S, const BoundaryPoint& x,
                           const BoundaryPoint& y) {
  int n = S.dim();
  KernelGeometry g = kernel_geometry(S, x, y);
  double sn = sphere_measure(n);
  double rho_n = ipow(g.rho, n);
  Vec a2inv_z = mat_vec(S.a2inv, g.z);
  CVec out = CVec::zero(n);

  // principal part: n (a2^{-1}z)_h rho^{-n-2} (z.nu) - rho^{-n} nu_h, scaled
  double zdotnu = dot(g.z, y.nu);
  double c0 = 1.0 / (sn * S.sqrt_det);
  for (int h = 0; h < n; ++h) {
    out[h] += c0 * (n * a2inv_z[h] / (g.rho * g.rho) * zdotnu / rho_n -
                    y.nu[h] / rho_n);
  }

  if (!S.A2.zero()) {
    Complex a2dot = dot(S.A2.value(g.theta, g.r), g.a2nu);
    // -(2-n) r^{1-n} theta_h (A2 . a2nu)
    double pre3 = -(2.0 - n) / ipow(g.r, n - 1);
    // -(dA2/dy_j . a2nu) (delta_jh r - z_j z_h / r) / r^n
    // -(dA2/dr . a2nu) z_h / r^{n-1}
    Complex drdot = dot(S.A2.deriv_r(g.theta, g.r), g.a2nu);
    std::array<Complex, 3> dydot{};
    for (int j = 0; j < n; ++j)
      dydot[static_cast<std::size_t>(j)] = dot(S.A2.deriv_y(g.theta, g.r, j), g.a2nu);
    double rn = ipow(g.r, n);
    for (int h = 0; h < n; ++h) {
      out[h] += pre3 * g.theta[h] * a2dot;
      Complex s4 = 0.0;
      for (int j = 0; j < n; ++j) {
        double geom = ((j == h) ? g.r : 0.0) - g.z[j] * g.z[h] / g.r;
        s4 += dydot[static_cast<std::size_t>(j)] * geom;
      }
      out[h] -= s4 / rn;
      out[h] -= drdot * g.z[h] / ipow(g.r, n - 1);
    }
  }

  if (!S.B1.zero()) {
    CMat H = S.B1.hessian(g.z);
    CVec Ha2nu = mat_vec(H, g.a2nu);
    Complex db1dot = dot(S.B1.gradient(g.z), g.a2nu);
    double lr = std::log(g.r);
    for (int h = 0; h < n; ++h) {
      out[h] -= Ha2nu[h] * lr;
      out[h] -= db1dot * g.z[h] / (g.r * g.r);
    }
  }

  if (!S.C.zero()) {
    CMat H = S.C.hessian(g.z);
    CVec Ha2nu = mat_vec(H, g.a2nu);
    for (int h = 0; h < n; ++h) out[h] -= Ha2nu[h];
  }

  if (g.nu_a1 != Complex(0.0)) {
    CVec ds = gradient(S, g.z);
    for (int h = 0; h < n; ++h) out[h] -= g.nu_a1 * ds[h];
  }
  return out;
}

CVec dlp_kernel_tangential_gradient(const FundamentalSolution& S,
                                    const BoundaryPoint& x, const BoundaryPoint& y) {
  CVec w = dlp_kernel_gradient_x(S, x, y);
  int n = S.dim();
  Complex wn = dot(w, x.nu);
  CVec out = w;
  for (int h = 0; h < n; ++h) out[h] -= wn * x.nu[h];
  return out;
}

Kernel dlp_as_kernel(const FundamentalSolution& S) {
  Kernel K;
  K.name = "double-layer:" + S.id;
  K.eval = [S](const BoundaryPoint& x, const BoundaryPoint& y) {
    return dlp_kernel(S, x, y);
  };
  return K;
}

Kernel dlp_gradient_component_kernel(const FundamentalSolution& S, int h) {
  if (h < 0 || h >= S.dim())
    throw IndexOutOfRange("gradient component index out of range");
  Kernel K;
  K.name = "double-layer-gradient:" + S.id;
  K.eval = [S, h](const BoundaryPoint& x, const BoundaryPoint& y) {
    return dlp_kernel_tangential_gradient(S, x, y)[h];
  };
  return K;
}

// ------------------------------------------------------------ quadrature --

namespace {

using Integrand = std::function<Complex(const BoundaryPoint&)>;

// Punctured trapezoid aligned at the target node.
Complex punctured_trapezoid(const BoundaryManifold& M, const Param& x,
                            const Integrand& F, int n_nodes) {
  double h = 2.0 * M_PI / n_nodes;
  Complex sum = 0.0;
  for (int i = 1; i < n_nodes; ++i) {
    BoundaryPoint y = M.at(Param{0, x.a + h * i, 0.0});
    sum += h * y.jac * F(y);
  }
  return sum;
}

struct SingularIntegral {
  Complex value{0.0, 0.0};
  double conv = 0.0;
};

// Curves: the puncture error of the trapezoid behaves like
// a h ln h + b h; two Richardson stages with factor 2 remove both terms.
// A fourth grid gives two fully extrapolated values whose difference is the
// convergence estimate.
SingularIntegral integrate_singular_2d(const BoundaryManifold& M, const Param& x,
                                       const Integrand& F, int level) {
  int N = 32 << level;
  Complex q0 = punctured_trapezoid(M, x, F, N);
  Complex q1 = punctured_trapezoid(M, x, F, 2 * N);
  Complex q2 = punctured_trapezoid(M, x, F, 4 * N);
  Complex q3 = punctured_trapezoid(M, x, F, 8 * N);
  Complex r1 = 2.0 * q1 - q0;
  Complex r2 = 2.0 * q2 - q1;
  Complex r3 = 2.0 * q3 - q2;
  Complex f1 = 2.0 * r2 - r1;
  Complex f2 = 2.0 * r3 - r2;
  SingularIntegral out;
  out.value = f2;
  out.conv = std::abs(f2 - f1);
  return out;
}

double smooth_cutoff(double d, double rho) {
  // 1 on [0, rho/2], 0 on [rho, inf), C^inf in between
  if (d <= 0.5 * rho) return 1.0;
  if (d >= rho) return 0.0;
  double t = (d - 0.5 * rho) / (0.5 * rho);
  auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  return bump(1.0 - t) / (bump(t) + bump(1.0 - t));
}

// Surfaces: global rule on the smoothly truncated integrand plus a local
// polar patch around the target, radial Gauss-Legendre on the cubically
// graded substitution s = s_max sigma^3 and a periodic trapezoid in the
// angle.
SingularIntegral integrate_singular_3d(const BoundaryManifold& M,
                                       const BoundaryPoint& x, const Integrand& F,
                                       int level) {
  double diam = M.diameter();
  double rho = 0.2 * diam;

  auto global_part = [&](int lev) {
    QuadratureRule rule = M.quadrature(lev);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double d = norm(rule.points[i].x - x.x);
      if (d <= 0.5 * rho) continue; // cutoff identically zero there
      double c = 1.0 - smooth_cutoff(d, rho);
      if (c == 0.0) continue;
      sum += rule.weights[i] * c * F(rule.points[i]);
    }
    return sum;
  };

  Complex global = global_part(level);
  double conv = 0.0;
  if (level >= 1) conv = std::abs(global - global_part(level - 1));

  // local patch; make sure the planar disk covers the cutoff support
  auto frame = tangent_frame(M, x.u);
  double s_max = 1.35 * rho;
  for (int tries = 0; tries < 3; ++tries) {
    double min_chord = 1e300;
    for (int j = 0; j < 8; ++j) {
      double phi = 2.0 * M_PI * j / 8.0;
      Vec e = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
      Vec ysurf = M.radial_project(x.x + s_max * e);
      min_chord = std::min(min_chord, norm(ysurf - x.x));
    }
    if (min_chord >= 1.02 * rho) break;
    s_max *= 1.3;
  }

  const int n_s = 24, n_phi = 48;
  static const auto gl01 = [] {
    std::vector<double> x, w;
    gauss_legendre(n_s, x, w);
    for (int i = 0; i < n_s; ++i) {
      x[static_cast<std::size_t>(i)] = 0.5 * (1.0 + x[static_cast<std::size_t>(i)]);
      w[static_cast<std::size_t>(i)] *= 0.5;
    }
    return std::make_pair(x, w);
  }();
  const std::vector<double>& gx = gl01.first;
  const std::vector<double>& gw = gl01.second;

  // one evaluation of the patch integrand chi * F * J at planar offset s
  auto patch_term = [&](double s, const Vec& e, const Vec& ep) {
    Vec ys = M.radial_project(x.x + s * e);
    double d = norm(ys - x.x);
    double chi = smooth_cutoff(d, rho);
    if (chi == 0.0) return Complex(0.0);
    double ds = std::max(1e-7, 1e-4 * s);
    Vec dy_s = (1.0 / (2.0 * ds)) *
               (M.radial_project(x.x + (s + ds) * e) -
                M.radial_project(x.x + (s - ds) * e));
    double dphi = 1e-5;
    Vec eplus = std::cos(dphi) * e + std::sin(dphi) * ep;
    Vec eminus = std::cos(dphi) * e - std::sin(dphi) * ep;
    Vec dy_phi = (1.0 / (2.0 * dphi)) *
                 (M.radial_project(x.x + s * eplus) -
                  M.radial_project(x.x + s * eminus));
    double J = norm(cross(dy_s, dy_phi));
    BoundaryPoint yp = M.at(M.param_of(ys));
    return Complex(chi * J) * F(yp);
  };

  Complex local = 0.0;
  double hphi = 2.0 * M_PI / n_phi;
  for (int j = 0; j < n_phi; ++j) {
    double phi = hphi * j;
    Vec e = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
    Vec ep = -std::sin(phi) * frame[0] + std::cos(phi) * frame[1];

    // split at the inner edge of the cutoff transition so the graded rule
    // sees chi == 1 and a dedicated rule resolves the transition band
    double lo = 0.0, hi = s_max;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (norm(M.radial_project(x.x + mid * e) - x.x) < 0.5 * rho)
        lo = mid;
      else
        hi = mid;
    }
    double s_a = 0.5 * (lo + hi);

    Complex acc = 0.0;
    for (int i = 0; i < n_s; ++i) {
      // inner part, cubically graded toward the singular point
      double sigma = gx[static_cast<std::size_t>(i)];
      double s = s_a * sigma * sigma * sigma;
      if (s > 0.0) {
        double measure = gw[static_cast<std::size_t>(i)] * 3.0 * s_a * sigma * sigma;
        acc += measure * patch_term(s, e, ep);
      }
      // transition band
      double st = s_a + (s_max - s_a) * sigma;
      double mt = gw[static_cast<std::size_t>(i)] * (s_max - s_a);
      acc += mt * patch_term(st, e, ep);
    }
    local += hphi * acc;
  }

  SingularIntegral out;
  out.value = global + local;
  out.conv = conv;
  return out;
}

SingularIntegral integrate_singular(const BoundaryManifold& M, const BoundaryPoint& x,
                                    const Integrand& F, int level) {
  if (M.dim() == 2) return integrate_singular_2d(M, x.u, F, level);
  return integrate_singular_3d(M, x, F, level);
}

} // namespace

WResult eval_W_one(const FundamentalSolution& S, const BoundaryManifold& M,
                   const Param& x, int level, const WOptions& opts) {
  BoundaryPoint bx = M.at(x);
  Integrand F = [&S, &bx](const BoundaryPoint& y) { return dlp_kernel(S, bx, y); };
  SingularIntegral w1 = integrate_singular(M, bx, F, level);
  if (w1.conv > opts.conv_tol * std::max(std::abs(w1.value), 1e-3))
    throw QuadratureNotConverged("double layer of the unit density did not stabilize");
  return WResult{w1.value, w1.conv};
}

WResult eval_W(const FundamentalSolution& S, const BoundaryManifold& M,
               const BoundaryFunction& mu, const Param& x, int level,
               const WOptions& opts) {
  BoundaryPoint bx = M.at(x);
  Complex mux = mu.value(bx.x);
  WResult w1 = eval_W_one(S, M, x, level, opts);

  Integrand G = [&S, &bx, &mu, mux](const BoundaryPoint& y) {
    return (mu.value(y.x) - mux) * dlp_kernel(S, bx, y);
  };
  Complex sub;
  double conv2;
  if (M.dim() == 2) {
    int N = 32 << level;
    Complex fine = punctured_trapezoid(M, x, G, 8 * N);
    Complex coarse = punctured_trapezoid(M, x, G, 4 * N);
    sub = fine;
    conv2 = std::abs(fine - coarse);
  } else {
    SingularIntegral si = integrate_singular_3d(M, bx, G, level);
    sub = si.value;
    conv2 = si.conv;
  }
  WResult out;
  out.value = sub + mux * w1.value;
  out.conv = w1.conv * std::abs(mux) + conv2;
  if (out.conv > opts.conv_tol * std::max(std::abs(out.value), 1e-3))
    throw QuadratureNotConverged("double layer quadrature did not stabilize");
  return out;
}

VQResult eval_v_and_Q(const FundamentalSolution& S, const BoundaryManifold& M,
                      const BoundaryFunction& g, const BoundaryFunction& mu, int j,
                      const Param& x, int level, const WOptions& opts) {
  if (j < 0 || j >= S.dim()) throw IndexOutOfRange("gradient index out of range");
  BoundaryPoint bx = M.at(x);
  Integrand Fv = [&](const BoundaryPoint& y) {
    return value(S, bx.x - y.x) * mu.value(y.x);
  };
  Complex gx = g.value(bx.x);
  Integrand Fq = [&](const BoundaryPoint& y) {
    return (gx - g.value(y.x)) * gradient(S, bx.x - y.x)[j] * mu.value(y.x);
  };
  SingularIntegral v = integrate_singular(M, bx, Fv, level);
  SingularIntegral q = integrate_singular(M, bx, Fq, level);
  VQResult out;
  out.v = v.value;
  out.q = q.value;
  out.conv = v.conv + q.conv;
  if (out.conv > opts.conv_tol * std::max(std::abs(out.v) + std::abs(out.q), 1e-3))
    throw QuadratureNotConverged("single layer quadrature did not stabilize");
  return out;
}

Complex w1_tangential_derivative(const FundamentalSolution& S,
                                 const BoundaryManifold& M, int l, int j,
                                 const Param& x, int level, const WOptions& opts) {
  int n = S.dim();
  if (l < 0 || l >= n || j < 0 || j >= n)
    throw IndexOutOfRange("tangential derivative index out of range");
  BoundaryPoint bx = M.at(x);
  const CVec& a1 = S.coeffs.a1;
  Complex a0 = S.coeffs.a0;

  // normal components as boundary functions through the parametrization
  auto nu_fn = [&M](int comp) {
    return BoundaryFunction{
        [&M, comp](const Vec& p) { return Complex(M.normal(M.param_of(p))[comp]); },
        nullptr};
  };
  BoundaryFunction one{[](const Vec&) { return Complex(1.0); }, nullptr};

  bool have_a1 = false;
  for (int r = 0; r < n; ++r)
    if (a1[r] != Complex(0.0)) have_a1 = true;

  Complex result = 0.0;
  if (have_a1) {
    BoundaryFunction nu_dot_a1{
        [&M, &a1](const Vec& p) { return dot(a1, M.normal(M.param_of(p))); }, nullptr};
    Complex Qj = eval_v_and_Q(S, M, nu_dot_a1, one, j, x, level, opts).q;
    Complex Ql = eval_v_and_Q(S, M, nu_dot_a1, one, l, x, level, opts).q;
    result += bx.nu[l] * Qj - bx.nu[j] * Ql;

    Complex na1x = dot(a1, bx.nu);
    Complex Ql_nj = eval_v_and_Q(S, M, nu_fn(j), one, l, x, level, opts).q;
    Complex Qj_nl = eval_v_and_Q(S, M, nu_fn(l), one, j, x, level, opts).q;
    result += na1x * (Ql_nj - Qj_nl);

    BoundaryFunction nu_lj{[&M, l, j](const Vec& p) {
                             Vec nu = M.normal(M.param_of(p));
                             return Complex(nu[l] * nu[j]);
                           },
                           nullptr};
    for (int r = 0; r < n; ++r) {
      if (a1[r] == Complex(0.0)) continue;
      Complex Qr_lj = eval_v_and_Q(S, M, nu_lj, one, r, x, level, opts).q;
      Complex Qr_j = eval_v_and_Q(S, M, nu_fn(j), one, r, x, level, opts).q;
      Complex Qr_j_nl = eval_v_and_Q(S, M, nu_fn(j), nu_fn(l), r, x, level, opts).q;
      result += a1[r] * (Qr_lj - bx.nu[l] * Qr_j - Qr_j_nl);
    }
  }
  if (a0 != Complex(0.0)) {
    Complex v_nj = eval_v_and_Q(S, M, one, nu_fn(j), 0, x, level, opts).v;
    Complex v_nl = eval_v_and_Q(S, M, one, nu_fn(l), 0, x, level, opts).v;
    result += a0 * (bx.nu[l] * v_nj - bx.nu[j] * v_nl);
  }
  return result;
}

namespace {

std::vector<std::pair<double, double>> maximal_condition_impl(
    const FundamentalSolution& S, const BoundaryManifold& M, int level,
    const std::vector<double>& radii, const std::vector<BoundaryPoint>& targets) {
  QuadratureRule rule = M.quadrature(level);
  std::vector<double> rsorted = radii;
  std::sort(rsorted.begin(), rsorted.end(), std::greater<double>());

  int n = S.dim();
  std::vector<std::pair<double, double>> curve;
  for (double r : rsorted) curve.emplace_back(r, 0.0);
  std::vector<std::pair<double, CVec>> contrib;
  for (const BoundaryPoint& x : targets) {
    contrib.clear();
    for (std::size_t jj = 0; jj < rule.size(); ++jj) {
      double d = norm(rule.points[jj].x - x.x);
      if (d < rsorted.back() || d == 0.0) continue;
      CVec g = dlp_kernel_tangential_gradient(S, x, rule.points[jj]);
      contrib.emplace_back(d, rule.weights[jj] * g);
    }
    std::sort(contrib.begin(), contrib.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    CVec acc = CVec::zero(n);
    std::size_t k = 0;
    for (std::size_t ri = 0; ri < rsorted.size(); ++ri) {
      while (k < contrib.size() && contrib[k].first >= rsorted[ri]) {
        acc = acc + contrib[k].second;
        ++k;
      }
      curve[ri].second = std::max(curve[ri].second, norm(acc));
    }
  }
  return curve;
}

double curve_sup(const std::vector<std::pair<double, double>>& curve) {
  double sup = 0.0;
  for (const auto& [r, v] : curve) sup = std::max(sup, v);
  return sup;
}

} // namespace

double maximal_function_condition(const FundamentalSolution& S,
                                  const BoundaryManifold& M, int level,
                                  const std::vector<double>& radii,
                                  int max_targets) {
  QuadratureRule rule = M.quadrature(level);
  std::size_t stride = 1;
  while (rule.size() / stride > static_cast<std::size_t>(max_targets)) stride *= 2;
  std::vector<BoundaryPoint> targets;
  for (std::size_t i = 0; i < rule.size(); i += stride) targets.push_back(rule.points[i]);
  return curve_sup(maximal_condition_impl(S, M, level, radii, targets));
}

double maximal_function_condition(const FundamentalSolution& S,
                                  const BoundaryManifold& M, int level,
                                  const std::vector<double>& radii,
                                  const std::vector<Param>& targets) {
  std::vector<BoundaryPoint> pts;
  pts.reserve(targets.size());
  for (const Param& u : targets) pts.push_back(M.at(u));
  return curve_sup(maximal_condition_impl(S, M, level, radii, pts));
}

std::vector<std::pair<double, double>> maximal_function_curve(
    const FundamentalSolution& S, const BoundaryManifold& M, int level,
    const std::vector<double>& radii, const std::vector<Param>& targets) {
  std::vector<BoundaryPoint> pts;
  pts.reserve(targets.size());
  for (const Param& u : targets) pts.push_back(M.at(u));
  return maximal_condition_impl(S, M, level, radii, pts);
}

double maximal_gradient_l1(const FundamentalSolution& S, const BoundaryManifold& M,
                           int level, double r_min,
                           const std::vector<Param>& targets) {
  QuadratureRule rule = M.quadrature(level);
  double sup = 0.0;
  for (const Param& u : targets) {
    BoundaryPoint x = M.at(u);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      double d = norm(rule.points[j].x - x.x);
      if (d < r_min || d == 0.0) continue;
      acc += rule.weights[j] * norm(dlp_kernel_tangential_gradient(S, x, rule.points[j]));
    }
    sup = std::max(sup, acc);
  }
  return sup;
}

double mean_node_spacing(const BoundaryManifold& M, int level) {
  QuadratureRule rule = M.quadrature(level);
  double total = rule.total_weight();
  double n = static_cast<double>(rule.size());
  if (M.dim() == 2) return total / n;
  return std::sqrt(total / n);
}

namespace {

// int over the sub-arc within chordal distance s of x of |ln|x-y|| dsigma,
// graded Gauss-Legendre on both sides of the target (curves only).
double log_neighborhood_integral(const BoundaryManifold& M, const BoundaryPoint& x,
                                 double s, int n_gl) {
  std::vector<double> gz, gv;
  gauss_legendre(n_gl, gz, gv);
  // find the parameter offsets where the chord reaches s
  auto chord = [&](double dt) { return norm(M.point(Param{0, x.u.a + dt, 0.0}) - x.x); };
  double total = 0.0;
  for (double side : {1.0, -1.0}) {
    double lo = 0.0, hi = M_PI;
    // chord is monotone on the catalog shapes up to half period
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if (chord(side * mid) < s)
        lo = mid;
      else
        hi = mid;
    }
    double delta = lo;
    // graded substitution tau = delta u^3 absorbs the log singularity
    for (int i = 0; i < n_gl; ++i) {
      double u = 0.5 * (1.0 + gz[static_cast<std::size_t>(i)]);
      double w = 0.5 * gv[static_cast<std::size_t>(i)];
      double tau = delta * u * u * u;
      double measure = w * 3.0 * delta * u * u;
      if (tau == 0.0) continue;
      BoundaryPoint y = M.at(Param{0, x.u.a + side * tau, 0.0});
      double d = norm(y.x - x.x);
      if (d >= s || d == 0.0) continue;
      total += measure * y.jac * std::abs(std::log(d));
    }
  }
  return total;
}

} // namespace

SingularBoundReport singular_bound_report(const FundamentalSolution& S,
                                          const BoundaryManifold& M, double alpha,
                                          unsigned seed, int level) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw HypothesisViolated("alpha must lie in ]0,1]");
  SingularBoundReport rep;
  int n = S.dim();
  std::size_t base = 2048;
  auto pairs = sample_pairs(M, base << level, 1e-6, seed);
  auto triples = sample_triples(M, base << level, 1e-6, seed + 1);

  double balpha = 0.0, blog = 0.0, btilde = 0.0;
  std::size_t pi = 0, ti = 0;
  for (int lev = 0; lev <= level; ++lev) {
    std::size_t pgoal = std::min(pairs.size(), base << lev);
    std::size_t tgoal = std::min(triples.size(), base << lev);
    for (; pi < pgoal; ++pi) {
      const auto& p = pairs[pi];
      double d = norm(p.x.x - p.y.x);
      double K = std::abs(dlp_kernel(S, p.x, p.y));
      balpha = std::max(balpha, std::pow(d, n - 1.0 - alpha) * K);
      if (n == 2) blog = std::max(blog, K / (1.0 + std::abs(std::log(d))));
    }
    for (; ti < tgoal; ++ti) {
      const auto& t = triples[ti];
      double d = norm(t.xp.x - t.xpp.x);
      double D = norm(t.xp.x - t.y.x);
      Complex diff = dlp_kernel(S, t.xp, t.y) - dlp_kernel(S, t.xpp, t.y);
      btilde = std::max(btilde, std::pow(D, n - alpha) * std::abs(diff) / d);
    }
    rep.b_alpha_trace.push_back(balpha);
    rep.b_tilde_trace.push_back(btilde);
  }
  rep.b_alpha = balpha;
  rep.b_log = blog;
  rep.b_tilde = btilde;

  if (n == 2) {
    QuadratureRule rule = M.quadrature(std::min(level, 2));
    std::size_t stride = std::max<std::size_t>(1, rule.size() / 16);
    for (int gl : {24, 48}) {
      double c5o = 0.0;
      for (std::size_t i = 0; i < rule.size(); i += stride) {
        for (int k = 1; k <= 8; ++k) {
          double s = std::exp(-1.0) * std::pow(2.0, -k);
          double integral = log_neighborhood_integral(M, rule.points[i], s, gl);
          c5o = std::max(c5o, integral / std::abs(s * std::log(s)));
        }
      }
      rep.c5o_trace.push_back(c5o);
    }
    rep.c5o = rep.c5o_trace.back();
  }
  return rep;
}

} // namespace layerpot
