#ifndef LAYERPOT_KERNELCLASS_HPP
#define LAYERPOT_KERNELCLASS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "layerpot/geometry.hpp"

namespace layerpot {

// Off-diagonal kernel on a boundary; eval must be finite for distinct points.
struct Kernel {
  std::function<Complex(const BoundaryPoint&, const BoundaryPoint&)> eval;
  std::string name;
};

struct Exponents {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

struct TraceEntry {
  int level = 0;
  double first_sup = 0.0;
  double second_sup = 0.0;
  std::size_t n_pairs = 0;
  std::size_t n_triples = 0;
};

// Sampled estimate of the two suprema defining the kernel-class norm:
//   first_sup  = sup |x-y|^{s1} |K(x,y)|
//   second_sup = sup |x'-y|^{s2} |x'-x''|^{-s3} |K(x',y)-K(x'',y)|
// over admissible triples (|x'-y| >= 2|x'-x''|). Estimates from growing
// sample prefixes, so the trace is monotone in the level.
struct KernelClassEstimate {
  Exponents exps;
  double first_sup = 0.0;
  double second_sup = 0.0;
  std::optional<double> sharp_sup;
  std::size_t n_pairs = 0;
  std::size_t n_triples = 0;
  std::vector<TraceEntry> trace;
  double norm() const { return first_sup + second_sup; }
  // relative change across the final two trace levels
  double drift() const;
};

struct PairSample {
  BoundaryPoint x, y;
};
struct TripleSample {
  BoundaryPoint xp, xpp, y; // |xp - y| >= 2 |xp - xpp| guaranteed
};

// Stratified samplers with log-uniform separations down to min_sep_frac of
// the diameter. Deterministic in the seed; a larger count with the same seed
// extends the sample set (prefix property).
std::vector<PairSample> sample_pairs(const BoundaryManifold& M, std::size_t count,
                                     double min_sep_frac, unsigned seed);
std::vector<TripleSample> sample_triples(const BoundaryManifold& M, std::size_t count,
                                         double min_sep_frac, unsigned seed);

KernelClassEstimate class_norm(const Kernel& K, const BoundaryManifold& M,
                               const Exponents& e, unsigned seed, int level,
                               std::size_t base_samples = 2048,
                               double min_sep_frac = 1e-6);

// sup over target nodes x and radii r of |int_{boundary \ B(x,r)} K dsigma|,
// hard cutoff at the ball boundary. Targets are a strided subset of the
// level-rule nodes, at most max_targets of them.
double sharp_norm(const Kernel& K, const BoundaryManifold& M, int level,
                  const std::vector<double>& radii, int max_targets = 128);

// Dyadic radii r = diam * 2^{-j} down to min_frac * diam.
std::vector<double> dyadic_radii(const BoundaryManifold& M, double min_frac);

// K(x,y) = mu(x) - mu(y)
Kernel xi_kernel(const BoundaryFunction& mu);

struct HomogeneousKernel {
  Kernel kernel;
  Exponents advertised; // (h, h+1, 1)
};

// Convolution kernel k(x-y) from a function positively homogeneous of degree
// -h; homogeneity is checked by sampling and NotHomogeneous is thrown on
// failure.
HomogeneousKernel homogeneous_kernel(std::function<Complex(const Vec&)> k, double h,
                                     int n);

struct AlgebraCheck {
  std::string name;
  bool pass = true;
  double worst = 0.0;      // worst observed ratio to the bound
  std::size_t n = 0;       // configurations checked
  std::string witness;     // description of the worst configuration
};

struct AlgebraReport {
  std::vector<AlgebraCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const AlgebraCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Sampled verification of the kernel-algebra statements: the product
// difference inequality, norm embeddings (including exponent reduction by a
// positive shift), the two-sided admissible-triple comparison, and the
// spherical Lipschitz bound for F((x-y)/|x-y|, |x-y|) with a supplied
// Lipschitz constant. Norm estimates are taken over sample sets containing
// every checked configuration, so each check is a theorem on the samples.
AlgebraReport verify_algebra(const Kernel& K1, const Exponents& e1, const Kernel& K2,
                             const Exponents& e2, const BoundaryManifold& M,
                             unsigned seed, std::size_t n_triples,
                             std::function<Complex(const Vec&, double)> F = nullptr,
                             double lipF = 0.0);

} // namespace layerpot

#endif
