#ifndef LAYERPOT_HOLDER_HPP
#define LAYERPOT_HOLDER_HPP

#include <functional>
#include <string>
#include <vector>

#include "layerpot/dlp.hpp"
#include "layerpot/geometry.hpp"

namespace layerpot {

// Modulus of continuity: zero at zero, positive and increasing, with
// omega(at) <= C a omega(t) for a >= 1.
class Modulus {
 public:
  Modulus() = default;

  static Modulus power(double alpha);
  // r^theta |ln r| below r_theta = exp(-1/theta), frozen beyond it.
  // Throws BadTheta unless theta lies in ]0,1].
  static Modulus omega(double theta);
  static Modulus max_of(std::vector<Modulus> parts);
  static Modulus custom(std::function<double(double)> f, std::string name,
                        double exponent);

  double operator()(double r) const { return f_ ? f_(r) : 0.0; }
  // power-law decay rate at 0+ (log factors ignored); for max_of the
  // smallest exponent wins near zero
  double exponent() const { return exponent_; }
  const std::string& name() const { return name_; }

 private:
  std::function<double(double)> f_;
  std::string name_;
  double exponent_ = 0.0;
};

double omega_theta(double theta, double r);

// Grid check of the modulus conditions (monotone, vanishing at zero,
// positive, scaling supremum finite on [1,1e4] x [1e-8,10]).
struct ModulusCheck {
  bool zero_at_zero = false;
  bool positive = false;
  bool increasing = false;
  double scaling_sup = 0.0;
  bool pass() const {
    return zero_at_zero && positive && increasing && std::isfinite(scaling_sup);
  }
};
ModulusCheck check_modulus(const Modulus& m);

struct ScaleBucket {
  double lo = 0.0, hi = 0.0;
  double max_quotient = 0.0;
  std::size_t count = 0;
};

struct HolderEstimate {
  std::string modulus_name;
  double seminorm = 0.0;
  std::vector<ScaleBucket> table;
  std::vector<double> trace; // seminorm per refinement level
  bool stable = false;       // final two levels within 5%
};

// Sampled seminorm sup |f(x)-f(y)| / omega(|x-y|) with per-scale maxima,
// log-uniform separations down to 1e-5 of the diameter. Sample prefixes grow
// with the level.
HolderEstimate holder_seminorm(const BoundaryFunction& f, const BoundaryManifold& M,
                               const Modulus& m, unsigned seed, int level,
                               std::size_t base_samples = 4096);

// Quotient table over all pairs of a fixed point/value set (used for grid
// functions such as differentiated potentials).
HolderEstimate quotient_table(const std::vector<Vec>& pts,
                              const std::vector<Complex>& vals, const Modulus& m,
                              double min_sep);

// Checks sup_{|x-y| >= a} |f(x)-f(y)| / omega(|x-y|) <= 2 sup|f| / omega(a)
// over sampled pairs; the bound uses the sampled supremum of |f|, so every
// sample must comply.
struct PairBoundReport {
  double bound = 0.0;
  double observed = 0.0;
  std::size_t n = 0;
  bool pass = false;
};
PairBoundReport separated_pair_bound_check(const BoundaryFunction& f,
                                           const BoundaryManifold& M, const Modulus& m,
                                           double a, unsigned seed,
                                           std::size_t samples = 4096);

// Case analysis of the mapping theorem for integral operators whose kernel
// gradient lies in a kernel class with exponents (t1, t2, t3): selects the
// case by t1 against n-1 and by t2-beta against n-1, and returns the target
// modulus. Throws HypothesisViolated naming the failed inequality.
struct MappingCase {
  std::string label; // i|ii|iii . a|aa|b|bb|c|cc
  Modulus target;
};
MappingCase classify_mapping(int n, double s1, double t1, double t2, double t3,
                             double beta);

struct NamedDensity {
  std::string name;
  BoundaryFunction f;
};

struct RegularityEntry {
  std::string density;
  double mu_seminorm = 0.0;
  std::vector<double> seminorm_by_level;
  std::vector<double> strong_seminorm_by_level; // power(beta + 0.1), beta < 1
  std::vector<HolderEstimate> tables;
  double ratio = 0.0; // derivative seminorm / density seminorm, finest level
  bool stable = false;
  double strong_growth = 0.0; // last/first too-strong-modulus seminorm
};

struct RegularityReport {
  double beta = 0.0;
  std::string mapping_label;
  std::string predicted_modulus;
  std::vector<RegularityEntry> entries;
};

// Empirical mapping check on a curve: potentials of the densities are
// differentiated by finite differences along the parametrization on a
// sequence of grids and their quotient tables against the predicted modulus
// are tracked across levels. Requires dim() == 2.
RegularityReport regularity_report(const FundamentalSolution& S,
                                   const BoundaryManifold& M,
                                   const std::vector<NamedDensity>& densities,
                                   double beta, int level, unsigned seed);

} // namespace layerpot

#endif
