#include "layerpot/fundsol.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "layerpot/special.hpp"

namespace layerpot {

namespace {

constexpr double EULER_GAMMA = 0.57721566490153286060651209;

// Entire-series helpers for the catalog profiles. All have positive (or
// alternating but benign) terms; series below u = 0.5, closed form beyond.

// (cosh u - 1)/u
double cosh_m1_over_u(double u) {
  if (std::abs(u) > 0.5) return (std::cosh(u) - 1.0) / u;
  double q = u * u, term = u / 2.0, sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= q / ((2.0 * k) * (2.0 * k - 1.0));
    sum += term;
  }
  return sum;
}

// (cosh u - 1 - u sinh u)/u
double cosh_def_over_u(double u) {
  if (std::abs(u) > 0.5) return (std::cosh(u) - 1.0 - u * std::sinh(u)) / u;
  double q = u * u, term = -u / 2.0, sum = term; // (1-2k)/(2k)! u^{2k-1}, k=1
  double fact_term = u / 2.0;                    // u^{2k-1}/(2k)!
  for (int k = 2; k < 12; ++k) {
    fact_term *= q / ((2.0 * k) * (2.0 * k - 1.0));
    term = (1.0 - 2.0 * k) * fact_term;
    sum += term;
  }
  return sum;
}

// d/du of cosh_def_over_u
double cosh_def_over_u_d(double u) {
  if (std::abs(u) > 0.5) {
    double c = std::cosh(u), s = std::sinh(u);
    return (1.0 - c - u * u * c + u * s) / (u * u);
  }
  double q = u * u;
  double fact_term = 1.0 / 2.0; // u^{2k-2}/(2k)!, k=1
  double sum = -fact_term;      // (1-2k)(2k-1)
  for (int k = 2; k < 12; ++k) {
    fact_term *= q / ((2.0 * k) * (2.0 * k - 1.0));
    sum += (1.0 - 2.0 * k) * (2.0 * k - 1.0) * fact_term;
  }
  return sum;
}

// sinh(u)/u and derivatives
double sinhc(double u) {
  if (std::abs(u) > 0.5) return std::sinh(u) / u;
  double q = u * u, term = 1.0, sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= q / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}
double sinhc_d(double u) {
  if (std::abs(u) > 0.5) return (u * std::cosh(u) - std::sinh(u)) / (u * u);
  double q = u * u;
  double fact_term = u / 6.0; // u^{2k-1}/(2k+1)!, k=1
  double sum = 2.0 * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= q / ((2.0 * k) * (2.0 * k + 1.0));
    sum += 2.0 * k * fact_term;
  }
  return sum;
}
double sinhc_dd(double u) {
  if (std::abs(u) > 0.5) {
    double c = std::cosh(u), s = std::sinh(u);
    return ((u * u + 2.0) * s - 2.0 * u * c) / (u * u * u);
  }
  double q = u * u;
  double fact_term = 1.0 / 6.0; // u^{2k-2}/(2k+1)!, k=1
  double sum = 2.0 * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= q / ((2.0 * k) * (2.0 * k + 1.0));
    sum += 2.0 * k * (2.0 * k - 1.0) * fact_term;
  }
  return sum;
}

// (1 - cos u)/u
double one_m_cos_over_u(double u) {
  if (std::abs(u) > 0.5) return (1.0 - std::cos(u)) / u;
  double q = -u * u, term = u / 2.0, sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= q / ((2.0 * k) * (2.0 * k - 1.0));
    sum += term;
  }
  return sum;
}

// (cos u - 1 + u sin u)/u
double cos_def_over_u(double u) {
  if (std::abs(u) > 0.5) return (std::cos(u) - 1.0 + u * std::sin(u)) / u;
  double fact_term = -u / 2.0; // (-1)^k u^{2k-1}/(2k)!, k=1
  double sum = (1.0 - 2.0) * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= -(u * u) / ((2.0 * k) * (2.0 * k - 1.0));
    sum += (1.0 - 2.0 * k) * fact_term;
  }
  return sum;
}
double cos_def_over_u_d(double u) {
  if (std::abs(u) > 0.5) {
    double c = std::cos(u), s = std::sin(u);
    return (u * u * c - c + 1.0 - u * s) / (u * u);
  }
  double fact_term = -1.0 / 2.0; // (-1)^k u^{2k-2}/(2k)!, k=1
  double sum = (1.0 - 2.0) * (2.0 - 1.0) * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= -(u * u) / ((2.0 * k) * (2.0 * k - 1.0));
    sum += (1.0 - 2.0 * k) * (2.0 * k - 1.0) * fact_term;
  }
  return sum;
}

// sin(u)/u and derivatives
double sinc(double u) {
  if (std::abs(u) > 0.5) return std::sin(u) / u;
  double q = -u * u, term = 1.0, sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= q / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}
double sinc_d(double u) {
  if (std::abs(u) > 0.5) return (u * std::cos(u) - std::sin(u)) / (u * u);
  double fact_term = -u / 6.0;
  double sum = 2.0 * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= -(u * u) / ((2.0 * k) * (2.0 * k + 1.0));
    sum += 2.0 * k * fact_term;
  }
  return sum;
}
double sinc_dd(double u) {
  if (std::abs(u) > 0.5) {
    double c = std::cos(u), s = std::sin(u);
    return ((2.0 - u * u) * s - 2.0 * u * c) / (u * u * u);
  }
  double fact_term = -1.0 / 6.0;
  double sum = 2.0 * fact_term;
  for (int k = 2; k < 12; ++k) {
    fact_term *= -(u * u) / ((2.0 * k) * (2.0 * k + 1.0));
    sum += 2.0 * k * (2.0 * k - 1.0) * fact_term;
  }
  return sum;
}

// I0(u) - 1 without cancellation at small u.
double i0_minus_1(double u) {
  double q = u * u / 4.0, term = 1.0, sum = 0.0;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * (1.0 + sum)) break;
  }
  return sum;
}

// (I0(u)-1)/u^2 (finite at 0)
double i0_minus_1_over_u2(double u) {
  double q = u * u / 4.0, term = 0.25, sum = 0.25; // k=1 term / u^2
  for (int k = 2; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// I1(u)/u (finite at 0)
double i1_over_u(double u) {
  double q = u * u / 4.0, term = 0.5, sum = 0.5;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// h(u) = sum_{k>=1} H_k (u/2)^{2k} / (k!)^2 and its first two u-derivatives.
double harmonic_series(double u, int deriv) {
  if (u == 0.0) return deriv == 2 ? 0.5 : 0.0;
  double q = u * u / 4.0;
  double pw = 1.0; // (u/2)^{2k} / (k!)^2 accumulating
  double hk = 0.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    pw *= q / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    double term;
    if (deriv == 0) term = hk * pw;
    else if (deriv == 1) term = hk * 2.0 * k * pw / u;
    else term = hk * k * (2.0 * k - 1.0) * 0.5 * pw / q;
    sum += term;
    if (k > 3 && pw < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

} // namespace

SmoothField radial_field(int n, std::function<Complex(double)> p,
                         std::function<Complex(double)> dp,
                         std::function<Complex(double)> ddp) {
  SmoothField f;
  f.eval = [p](const Vec& x) { return p(norm(x)); };
  f.grad = [dp, n](const Vec& x) {
    double r = norm(x);
    CVec g = CVec::zero(n);
    if (r == 0.0) return g;
    Complex d = dp(r);
    for (int i = 0; i < n; ++i) g[i] = d * x[i] / r;
    return g;
  };
  f.hess = [dp, ddp, n](const Vec& x) {
    double r = norm(x);
    CMat h = CMat::zero(n);
    Complex d1 = dp(r), d2 = ddp(r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double ti = x[i] / r, tj = x[j] / r;
        h(i, j) = d2 * ti * tj + d1 * ((i == j ? 1.0 : 0.0) - ti * tj) / r;
      }
    return h;
  };
  return f;
}

double sphere_measure(int n) { return n == 2 ? 2.0 * M_PI : 4.0 * M_PI; }

double laplace_Sn(const Vec& x) {
  double r = norm(x);
  if (r == 0.0) throw OriginEvaluation("fundamental solution evaluated at the origin");
  if (x.n == 2) return std::log(r) / (2.0 * M_PI);
  return -1.0 / (4.0 * M_PI * r);
}

Complex value(const FundamentalSolution& S, const Vec& x) {
  double r = norm(x);
  if (r == 0.0) throw OriginEvaluation("fundamental solution evaluated at the origin");
  int n = S.dim();
  Vec u = mat_vec(S.Tinv, x);
  Complex val = laplace_Sn(u) / S.sqrt_det;
  if (!S.A1.zero()) {
    Vec theta = (1.0 / r) * x;
    double pre = (n == 3) ? 1.0 : r; // |x|^{3-n}
    val += pre * S.A1.value(theta, r);
  }
  Complex logc = S.B1.value(x);
  if (n != 2) logc += S.b0;
  if (logc != Complex(0.0)) val += logc * std::log(r);
  val += S.C.value(x);
  return val;
}

CVec gradient(const FundamentalSolution& S, const Vec& x) {
  double r = norm(x);
  if (r == 0.0) throw OriginEvaluation("fundamental solution evaluated at the origin");
  int n = S.dim();
  double rho = norm(mat_vec(S.Tinv, x));
  Vec a2inv_x = mat_vec(S.a2inv, x);
  double pref = 1.0 / (sphere_measure(n) * S.sqrt_det * ipow(rho, n));
  CVec g = CVec::zero(n);
  for (int i = 0; i < n; ++i) g[i] = pref * a2inv_x[i];
  if (!S.A2.zero()) {
    Vec theta = (1.0 / r) * x;
    CVec a2term = S.A2.value(theta, r);
    double pre = (n == 3) ? 1.0 / r : 1.0; // |x|^{2-n}
    g = g + pre * a2term;
  }
  if (!S.B1.zero()) g = g + std::log(r) * S.B1.gradient(x);
  if (!S.C.zero()) g = g + S.C.gradient(x);
  return g;
}

namespace {

FundamentalSolution base_instance(const OperatorCoefficients& c, std::string id) {
  FundamentalSolution S;
  S.coeffs = c;
  S.factor = principal_factor(c.a2);
  S.Tinv = inverse(S.factor.T);
  S.a2inv = inverse(c.a2);
  S.sqrt_det = std::sqrt(S.factor.detA2);
  S.id = std::move(id);
  return S;
}

OperatorCoefficients simple_coeffs(int n, const Mat& a2, Complex a0) {
  std::map<MultiIndex, Complex> m;
  for (int l = 0; l < n; ++l)
    for (int j = l; j < n; ++j) {
      MultiIndex g{0, 0, 0};
      g[static_cast<std::size_t>(l)] += 1;
      g[static_cast<std::size_t>(j)] += 1;
      m[g] = (l == j) ? a2(l, l) : 2.0 * a2(l, j);
    }
  if (a0 != Complex(0.0)) m[MultiIndex{0, 0, 0}] = a0;
  return build_coefficients(n, m);
}

// A2(theta, r) = theta * g(r) with the radius-independent extension
// A(x/|x|, r); dy_j at |theta| = 1 is (e_j - theta_j theta) g(r).
SphereVectorField directional_field(int n, std::function<Complex(double)> g,
                                    std::function<Complex(double)> dg) {
  SphereVectorField F;
  F.eval = [g, n](const Vec& theta, double r) {
    Complex gv = g(r);
    CVec out = CVec::zero(n);
    for (int i = 0; i < n; ++i) out[i] = gv * theta[i];
    return out;
  };
  F.dy = [g, n](const Vec& theta, double r, int j) {
    Complex gv = g(r);
    CVec out = CVec::zero(n);
    for (int i = 0; i < n; ++i)
      out[i] = gv * (((i == j) ? 1.0 : 0.0) - theta[j] * theta[i]);
    return out;
  };
  F.dr = [dg, n](const Vec& theta, double r) {
    Complex dv = dg(r);
    CVec out = CVec::zero(n);
    for (int i = 0; i < n; ++i) out[i] = dv * theta[i];
    return out;
  };
  return F;
}

} // namespace

FundamentalSolution make_laplace(int n) {
  if (n != 2 && n != 3) throw BadDimension("dimension must be 2 or 3");
  return base_instance(simple_coeffs(n, Mat::identity(n), 0.0), "laplace");
}

FundamentalSolution make_anisotropic(const Mat& a2) {
  std::ostringstream id;
  id << "anisotropic" << a2.n << "d";
  return base_instance(simple_coeffs(a2.n, a2, 0.0), id.str());
}

FundamentalSolution make_yukawa3d(double lambda) {
  if (!(lambda > 0.0)) throw UnsupportedKind("yukawa3d requires lambda > 0");
  std::ostringstream id;
  id << "yukawa3d:lambda=" << lambda;
  FundamentalSolution S =
      base_instance(simple_coeffs(3, Mat::identity(3), -lambda * lambda), id.str());
  double pre = 1.0 / (4.0 * M_PI);
  S.A1.eval = [lambda, pre](const Vec&, double r) {
    return Complex(-pre * lambda * cosh_m1_over_u(lambda * r));
  };
  S.A2 = directional_field(
      3,
      [lambda, pre](double r) { return Complex(pre * lambda * cosh_def_over_u(lambda * r)); },
      [lambda, pre](double r) {
        return Complex(pre * lambda * lambda * cosh_def_over_u_d(lambda * r));
      });
  S.C = radial_field(
      3, [lambda, pre](double r) { return Complex(pre * lambda * sinhc(lambda * r)); },
      [lambda, pre](double r) { return Complex(pre * lambda * lambda * sinhc_d(lambda * r)); },
      [lambda, pre](double r) {
        return Complex(pre * lambda * lambda * lambda * sinhc_dd(lambda * r));
      });
  return S;
}

FundamentalSolution make_helmholtz3d(double k) {
  if (!(k > 0.0)) throw UnsupportedKind("helmholtz3d requires k > 0");
  std::ostringstream id;
  id << "helmholtz3d:k=" << k;
  FundamentalSolution S =
      base_instance(simple_coeffs(3, Mat::identity(3), k * k), id.str());
  double pre = 1.0 / (4.0 * M_PI);
  S.A1.eval = [k, pre](const Vec&, double r) {
    return Complex(pre * k * one_m_cos_over_u(k * r));
  };
  S.A2 = directional_field(
      3, [k, pre](double r) { return Complex(pre * k * cos_def_over_u(k * r)); },
      [k, pre](double r) { return Complex(pre * k * k * cos_def_over_u_d(k * r)); });
  S.C = radial_field(
      3,
      [k, pre](double r) { return Complex(0.0, -pre * k * sinc(k * r)); },
      [k, pre](double r) { return Complex(0.0, -pre * k * k * sinc_d(k * r)); },
      [k, pre](double r) { return Complex(0.0, -pre * k * k * k * sinc_dd(k * r)); });
  return S;
}

FundamentalSolution make_yukawa2d(double lambda) {
  if (!(lambda > 0.0)) throw UnsupportedKind("yukawa2d requires lambda > 0");
  std::ostringstream id;
  id << "yukawa2d:lambda=" << lambda;
  FundamentalSolution S =
      base_instance(simple_coeffs(2, Mat::identity(2), -lambda * lambda), id.str());
  double pre = 1.0 / (2.0 * M_PI);
  double kappa = std::log(lambda / 2.0) + EULER_GAMMA;
  S.b0 = 0.0;
  S.B1 = radial_field(
      2, [lambda, pre](double r) { return Complex(pre * i0_minus_1(lambda * r)); },
      [lambda, pre](double r) { return Complex(pre * lambda * bessel_I1(lambda * r)); },
      [lambda, pre](double r) {
        double u = lambda * r;
        double i1p = bessel_I0(u) - (u > 0 ? bessel_I1(u) / u : 0.5);
        return Complex(pre * lambda * lambda * i1p);
      });
  S.C = radial_field(
      2,
      [lambda, pre, kappa](double r) {
        double u = lambda * r;
        return Complex(pre * (kappa * bessel_I0(u) - harmonic_series(u, 0)));
      },
      [lambda, pre, kappa](double r) {
        double u = lambda * r;
        return Complex(pre * lambda * (kappa * bessel_I1(u) - harmonic_series(u, 1)));
      },
      [lambda, pre, kappa](double r) {
        double u = lambda * r;
        double i1p = bessel_I0(u) - (u > 0 ? bessel_I1(u) / u : 0.5);
        return Complex(pre * lambda * lambda * (kappa * i1p - harmonic_series(u, 2)));
      });
  S.A2 = directional_field(
      2,
      [lambda, pre](double r) {
        double u = lambda * r;
        return Complex(pre * lambda * u * i0_minus_1_over_u2(u));
      },
      [lambda, pre](double r) {
        double u = lambda * r;
        return Complex(pre * lambda * lambda * (i1_over_u(u) - i0_minus_1_over_u2(u)));
      });
  return S;
}

namespace {

std::map<std::string, double> parse_kv(const std::string& spec) {
  std::map<std::string, double> kv;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UnsupportedKind("malformed parameter: " + item);
    try {
      kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UnsupportedKind("malformed parameter value: " + item);
    }
  }
  return kv;
}

double need(const std::map<std::string, double>& kv, const std::string& key,
            const std::string& kind) {
  auto it = kv.find(key);
  if (it == kv.end()) throw UnsupportedKind(kind + " requires parameter " + key);
  return it->second;
}

} // namespace

FundamentalSolution catalog_construct(const std::string& id, int n) {
  std::string name = id, spec;
  auto colon = id.find(':');
  if (colon != std::string::npos) {
    name = id.substr(0, colon);
    spec = id.substr(colon + 1);
  }
  auto kv = parse_kv(spec);
  if (name == "laplace") return make_laplace(n);
  if (name == "yukawa3d") {
    if (n != 3) throw UnsupportedKind("yukawa3d requires dimension 3");
    return make_yukawa3d(need(kv, "lambda", name));
  }
  if (name == "helmholtz3d") {
    if (n != 3) throw UnsupportedKind("helmholtz3d requires dimension 3");
    return make_helmholtz3d(need(kv, "k", name));
  }
  if (name == "yukawa2d") {
    if (n != 2) throw UnsupportedKind("yukawa2d requires dimension 2");
    return make_yukawa2d(need(kv, "lambda", name));
  }
  if (name == "anisotropic" || name == "anisotropic2d" || name == "anisotropic3d") {
    int m = name == "anisotropic2d" ? 2 : (name == "anisotropic3d" ? 3 : n);
    if (m != n) throw UnsupportedKind(name + " incompatible with dimension " + std::to_string(n));
    Mat a2 = Mat::zero(n);
    a2(0, 0) = need(kv, "a11", name);
    a2(1, 1) = need(kv, "a22", name);
    a2(0, 1) = a2(1, 0) = kv.count("a12") ? kv.at("a12") : 0.0;
    if (n == 3) {
      a2(2, 2) = need(kv, "a33", name);
      a2(0, 2) = a2(2, 0) = kv.count("a13") ? kv.at("a13") : 0.0;
      a2(1, 2) = a2(2, 1) = kv.count("a23") ? kv.at("a23") : 0.0;
    }
    return make_anisotropic(a2);
  }
  throw UnsupportedKind("unknown operator id: " + id);
}

std::vector<std::string> catalog_ids() {
  return {"laplace", "anisotropic2d:a11=..,a12=..,a22=..",
          "anisotropic3d:a11=..,a12=..,a13=..,a22=..,a23=..,a33=..",
          "yukawa3d:lambda=..", "helmholtz3d:k=..", "yukawa2d:lambda=.."};
}

double pde_residual(const FundamentalSolution& S, const Vec& x) {
  int n = S.dim();
  double r = norm(x);
  double h = 2.5e-4 * std::max(r, 0.5);
  auto f = [&S](const Vec& p) { return value(S, p); };
  auto shift = [&x](int i, double d) {
    Vec p = x;
    p[i] += d;
    return p;
  };
  Complex fx = f(x);
  Complex op(0.0);
  double scale = 0.0;
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      Complex d2;
      if (l == j) {
        d2 = (f(shift(l, h)) - 2.0 * fx + f(shift(l, -h))) / (h * h);
      } else {
        Vec pp = x, pm = x, mp = x, mm = x;
        pp[l] += h; pp[j] += h;
        pm[l] += h; pm[j] -= h;
        mp[l] -= h; mp[j] += h;
        mm[l] -= h; mm[j] -= h;
        d2 = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
      }
      op += S.coeffs.a2(l, j) * d2;
      scale += std::abs(S.coeffs.a2(l, j)) * std::abs(d2);
    }
    Complex d1 = (f(shift(l, h)) - f(shift(l, -h))) / (2.0 * h);
    op += S.coeffs.a1[l] * d1;
    scale += std::abs(S.coeffs.a1[l]) * std::abs(d1);
  }
  op += S.coeffs.a0 * fx;
  scale += std::abs(S.coeffs.a0) * std::abs(fx);
  return std::abs(op) / std::max(scale, 1e-30);
}

StructureReport verify_structure(const FundamentalSolution& S, int samples, unsigned seed) {
  StructureReport rep;
  rep.samples = samples;
  int n = S.dim();
  std::mt19937_64 rng(seed);
  auto uni = [&rng]() { return std::ldexp(static_cast<double>(rng()), -64); };
  auto random_dir = [&]() {
    if (n == 2) {
      double t = 2.0 * M_PI * uni();
      return Vec(std::cos(t), std::sin(t));
    }
    double z = 2.0 * uni() - 1.0, t = 2.0 * M_PI * uni();
    double w = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec(w * std::cos(t), w * std::sin(t), z);
  };

  rep.b1_zero_at_origin = std::abs(S.B1.value(Vec::zero(n))) <= 1e-14;
  if (n % 2 == 1) {
    bool b1_null = std::abs(S.b0) == 0.0;
    for (int i = 0; i < samples && b1_null; ++i) {
      Vec p = (0.5 + 1.5 * uni()) * random_dir();
      if (std::abs(S.B1.value(p)) > 1e-14) b1_null = false;
    }
    rep.odd_n_null_ok = b1_null;
  }

  for (int i = 0; i < samples; ++i) {
    Vec theta = random_dir();
    Vec mtheta = -1.0 * theta;
    rep.a1_oddness_residual = std::max(
        rep.a1_oddness_residual, std::abs(S.A1.value(theta, 0.0) + S.A1.value(mtheta, 0.0)));
    CVec d = S.A2.value(theta, 0.0) - S.A2.value(mtheta, 0.0);
    rep.a2_evenness_residual = std::max(rep.a2_evenness_residual, norm(d));
  }

  double hfd = 1e-5;
  for (int i = 0; i < samples; ++i) {
    Vec p = (0.5 + 1.5 * uni()) * random_dir();
    CVec g = gradient(S, p);
    double scale = std::max(norm(g), 1e-12);
    for (int l = 0; l < n; ++l) {
      Vec pp = p, pm = p;
      pp[l] += hfd;
      pm[l] -= hfd;
      Complex fd = (value(S, pp) - value(S, pm)) / (2.0 * hfd);
      rep.gradient_fd_residual =
          std::max(rep.gradient_fd_residual, std::abs(fd - g[l]) / scale);
    }
    rep.pde_residual_max = std::max(rep.pde_residual_max, pde_residual(S, p));
  }
  return rep;
}

} // namespace layerpot
