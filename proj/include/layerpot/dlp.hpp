#ifndef LAYERPOT_DLP_HPP
#define LAYERPOT_DLP_HPP

#include <vector>

#include "layerpot/fundsol.hpp"
#include "layerpot/geometry.hpp"
#include "layerpot/kernelclass.hpp"

namespace layerpot {

// Boundary kernel of the double layer potential,
//   K(x,y) = -(s_n sqrt(det a2))^{-1} |T^{-1}(x-y)|^{-n} (x-y).nu(y)
//            - |x-y|^{2-n} A2((x-y)/|x-y|, |x-y|) . a2 nu(y)
//            - DB1(x-y) . a2 nu(y) ln|x-y| - DC(x-y) . a2 nu(y)
//            - nu(y) . a1 S(x-y),
// assembled from the structured decomposition. Throws CoincidentPoints.
Complex dlp_kernel(const FundamentalSolution& S, const BoundaryPoint& x,
                   const BoundaryPoint& y);

// Same kernel through the other route, -DS(x-y).a2 nu(y) - nu(y).a1 S(x-y);
// agrees with dlp_kernel to roundoff and serves as its cross-check.
Complex dlp_kernel_reference(const FundamentalSolution& S, const BoundaryPoint& x,
                             const BoundaryPoint& y);

// Ambient x-derivative of the kernel, one addendum per term of the
// decomposition.
CVec dlp_kernel_gradient_x(const FundamentalSolution& S, const BoundaryPoint& x,
                           const BoundaryPoint& y);

// Tangential gradient in the first variable: every addendum of the ambient
// derivative projected by  w |-> sum_l nu_l(x) [nu_l(x) w_h - nu_h(x) w_l].
CVec dlp_kernel_tangential_gradient(const FundamentalSolution& S,
                                    const BoundaryPoint& x, const BoundaryPoint& y);

// Kernel adapters.
Kernel dlp_as_kernel(const FundamentalSolution& S);
Kernel dlp_gradient_component_kernel(const FundamentalSolution& S, int h);

struct WOptions {
  // trace-change threshold before QuadratureNotConverged is thrown, relative
  // to the result magnitude with an absolute floor of 1e-3
  double conv_tol = 0.1;
};

struct WResult {
  Complex value{0.0, 0.0};
  double conv = 0.0; // observed trace change of the singular quadrature
};

// Double layer potential of the unit density by graded singular quadrature:
// punctured trapezoid with two Richardson stages (curves), or a smooth
// partition into a global rule plus a local polar patch (surfaces).
WResult eval_W_one(const FundamentalSolution& S, const BoundaryManifold& M,
                   const Param& x, int level, const WOptions& opts = {});

// W[mu](x) = int (mu(y) - mu(x)) K(x,y) dsigma + mu(x) W[1](x).
// Throws QuadratureNotConverged when the trace change exceeds opts.conv_tol.
WResult eval_W(const FundamentalSolution& S, const BoundaryManifold& M,
               const BoundaryFunction& mu, const Param& x, int level,
               const WOptions& opts = {});

struct VQResult {
  Complex v{0.0, 0.0};  // single layer:  int S(x-y) mu(y) dsigma
  Complex q{0.0, 0.0};  // commutator:    int (g(x)-g(y)) dS/dx_j (x-y) mu(y) dsigma
  double conv = 0.0;
};

VQResult eval_v_and_Q(const FundamentalSolution& S, const BoundaryManifold& M,
                      const BoundaryFunction& g, const BoundaryFunction& mu, int j,
                      const Param& x, int level, const WOptions& opts = {});

// Tangential derivative nu_l d_j - nu_j d_l of W[1], assembled from the
// commutator integrals and weighted single layers of the normal components.
Complex w1_tangential_derivative(const FundamentalSolution& S,
                                 const BoundaryManifold& M, int l, int j,
                                 const Param& x, int level,
                                 const WOptions& opts = {});

// sup over target nodes x and radii r of the magnitude of
// int_{boundary \ B(x,r)} grad_T K(x,y) dsigma_y, hard ball cutoff.
double maximal_function_condition(const FundamentalSolution& S,
                                  const BoundaryManifold& M, int level,
                                  const std::vector<double>& radii,
                                  int max_targets = 128);

// Same supremum over a caller-fixed target set, for drift comparisons across
// refinement levels.
double maximal_function_condition(const FundamentalSolution& S,
                                  const BoundaryManifold& M, int level,
                                  const std::vector<double>& radii,
                                  const std::vector<Param>& targets);

// Per-radius suprema over the targets, sorted by decreasing radius.
std::vector<std::pair<double, double>> maximal_function_curve(
    const FundamentalSolution& S, const BoundaryManifold& M, int level,
    const std::vector<double>& radii, const std::vector<Param>& targets);

// max over the targets of int_{d >= r_min} |grad_T K| dsigma: the
// absolute-integral scale against which the cancellation in the truncated
// integrals is measured.
double maximal_gradient_l1(const FundamentalSolution& S, const BoundaryManifold& M,
                           int level, double r_min, const std::vector<Param>& targets);

// Mean node spacing of the level rule; truncation radii below a few
// spacings are not resolved by the hard cutoff.
double mean_node_spacing(const BoundaryManifold& M, int level);

struct SingularBoundReport {
  double b_alpha = 0.0; // sup |x-y|^{n-1-alpha} |K|
  double b_log = 0.0;   // n = 2: sup |K| / (1 + |ln|x-y||)
  double b_tilde = 0.0; // sup over admissible triples of the difference bound
  double c5o = 0.0;     // n = 2: sup |s ln s|^{-1} int_{B(x,s)} |ln|x-y|| dsigma
  std::vector<double> b_alpha_trace, b_tilde_trace, c5o_trace;
};

SingularBoundReport singular_bound_report(const FundamentalSolution& S,
                                          const BoundaryManifold& M, double alpha,
                                          unsigned seed, int level);

} // namespace layerpot

#endif
