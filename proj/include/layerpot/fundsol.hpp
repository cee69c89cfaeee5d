#ifndef LAYERPOT_FUNDSOL_HPP
#define LAYERPOT_FUNDSOL_HPP

#include <functional>
#include <string>

#include "layerpot/coeffs.hpp"
#include "layerpot/linalg.hpp"

namespace layerpot {

// Smooth complex field on R^n with derivative access. A default-constructed
// field is identically zero (null closures).
struct SmoothField {
  std::function<Complex(const Vec&)> eval;
  std::function<CVec(const Vec&)> grad;
  std::function<CMat(const Vec&)> hess;

  bool zero() const { return !eval; }
  Complex value(const Vec& x) const { return eval ? eval(x) : Complex(0.0); }
  CVec gradient(const Vec& x) const { return grad ? grad(x) : CVec::zero(x.n); }
  CMat hessian(const Vec& x) const { return hess ? hess(x) : CMat::zero(x.n); }
};

// Radial field p(|x|) from a profile with two derivatives.
SmoothField radial_field(int n, std::function<Complex(double)> p,
                         std::function<Complex(double)> dp,
                         std::function<Complex(double)> ddp);

// Scalar field on the unit sphere x R (first correction term).
struct SphereScalarField {
  std::function<Complex(const Vec&, double)> eval;
  bool zero() const { return !eval; }
  Complex value(const Vec& theta, double r) const {
    return eval ? eval(theta, r) : Complex(0.0);
  }
};

// Vector field on the unit sphere x R with the derivative access the
// tangential-gradient expansion consumes. dy is the partial derivative of
// the radius-independent extension A(x/|x|, r) in the j-th coordinate.
struct SphereVectorField {
  std::function<CVec(const Vec&, double)> eval;
  std::function<CVec(const Vec&, double, int)> dy;
  std::function<CVec(const Vec&, double)> dr;
  bool zero() const { return !eval; }
  CVec value(const Vec& theta, double r) const {
    return eval ? eval(theta, r) : CVec::zero(theta.n);
  }
  CVec deriv_y(const Vec& theta, double r, int j) const {
    return dy ? dy(theta, r, j) : CVec::zero(theta.n);
  }
  CVec deriv_r(const Vec& theta, double r) const {
    return dr ? dr(theta, r) : CVec::zero(theta.n);
  }
};

// Structured fundamental solution
//   S(x) = det(a2)^{-1/2} S_n(T^{-1}x) + |x|^{3-n} A1(x/|x|, |x|)
//          + (B1(x) + b0 [n != 2]) ln|x| + C(x),
// with gradient
//   DS(x) = (s_n sqrt(det a2))^{-1} |T^{-1}x|^{-n} x^t a2^{-1}
//           + |x|^{2-n} A2(x/|x|, |x|) + DB1(x) ln|x| + DC(x).
// For odd n both b0 and B1 vanish.
struct FundamentalSolution {
  OperatorCoefficients coeffs;
  PrincipalFactor factor;
  Mat Tinv;
  Mat a2inv;
  double sqrt_det = 1.0;
  SphereScalarField A1;
  SphereVectorField A2;
  Complex b0{0.0, 0.0};
  SmoothField B1;
  SmoothField C;
  std::string id;

  int dim() const { return coeffs.dim; }
};

// Surface measure of the unit sphere: s_2 = 2*pi, s_3 = 4*pi.
double sphere_measure(int n);

// Fundamental solution of the Laplace operator: ln|x|/s_2 for n = 2,
// |x|^{2-n} / ((2-n) s_n) for n = 3. Throws OriginEvaluation at x = 0.
double laplace_Sn(const Vec& x);

Complex value(const FundamentalSolution& S, const Vec& x);
CVec gradient(const FundamentalSolution& S, const Vec& x);

// Catalog constructors.
FundamentalSolution make_laplace(int n);
FundamentalSolution make_anisotropic(const Mat& a2);
FundamentalSolution make_yukawa3d(double lambda);
FundamentalSolution make_helmholtz3d(double k);
FundamentalSolution make_yukawa2d(double lambda);

// String ids: "laplace", "anisotropic2d:a11=..,a12=..,a22=..",
// "anisotropic3d:a11=..,...,a33=..", "yukawa3d:lambda=..",
// "helmholtz3d:k=..", "yukawa2d:lambda=..". Throws UnsupportedKind.
FundamentalSolution catalog_construct(const std::string& id, int n);
std::vector<std::string> catalog_ids();

// Finite-difference residual of the operator applied to value(), relative to
// the magnitude of its addenda. Step scaled to |x|.
double pde_residual(const FundamentalSolution& S, const Vec& x);

struct StructureReport {
  bool b1_zero_at_origin = true;
  bool odd_n_null_ok = true;        // b0 = 0 and B1 == 0 when n is odd
  double a1_oddness_residual = 0.0; // sup |A1(t,0) + A1(-t,0)|
  double a2_evenness_residual = 0.0;
  double gradient_fd_residual = 0.0; // relative, against central differences
  double pde_residual_max = 0.0;     // relative, annulus 0.5 <= |x| <= 2
  int samples = 0;
  bool pass(double sym_tol = 1e-10, double fd_tol = 1e-6, double pde_tol = 1e-5) const {
    return b1_zero_at_origin && odd_n_null_ok && a1_oddness_residual <= sym_tol &&
           a2_evenness_residual <= sym_tol && gradient_fd_residual <= fd_tol &&
           pde_residual_max <= pde_tol;
  }
};

StructureReport verify_structure(const FundamentalSolution& S, int samples,
                                 unsigned seed = 1234);

} // namespace layerpot

#endif
