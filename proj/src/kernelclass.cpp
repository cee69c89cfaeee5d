#include "layerpot/kernelclass.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "layerpot/errors.hpp"

namespace layerpot {

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned seed) : g(seed) {}
  double uniform() { return std::ldexp(static_cast<double>(g()), -64); }
  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform() * std::log(hi / lo));
  }
};

BoundaryPoint sample_point(const BoundaryManifold& M, Rng& rng) {
  if (M.dim() == 2) return M.at(Param{0, 2.0 * M_PI * rng.uniform(), 0.0});
  Param u{0, 2.0 * rng.uniform() - 1.0, 2.0 * M_PI * rng.uniform()};
  return M.at(u);
}

// Point at approximate chordal separation sep from x.
BoundaryPoint sample_near(const BoundaryManifold& M, const BoundaryPoint& x,
                          double sep, Rng& rng) {
  if (M.dim() == 2) {
    double dir = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double dt = std::min(sep / std::max(x.jac, 1e-12), M_PI);
    // the chord lags the arc at large steps; pull the step toward the
    // target separation
    for (int it = 0; it < 3; ++it) {
      double c = norm(M.point(Param{0, x.u.a + dir * dt, 0.0}) - x.x);
      if (c <= 0.0) break;
      dt = std::min(dt * sep / c, M_PI);
    }
    return M.at(Param{0, x.u.a + dir * dt, 0.0});
  }
  auto frame = tangent_frame(M, x.u);
  double phi = 2.0 * M_PI * rng.uniform();
  Vec step = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
  Vec z = x.x + sep * step;
  return M.at(M.param_of(M.radial_project(z)));
}

Complex eval_checked(const Kernel& K, const BoundaryPoint& a, const BoundaryPoint& b) {
  Complex v = K.eval(a, b);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw KernelEvaluationFailure("kernel returned a non-finite value");
  return v;
}

} // namespace

double KernelClassEstimate::drift() const {
  if (trace.size() < 2) return 0.0;
  const TraceEntry& a = trace[trace.size() - 2];
  const TraceEntry& b = trace.back();
  double na = a.first_sup + a.second_sup;
  double nb = b.first_sup + b.second_sup;
  return std::abs(nb - na) / std::max({std::abs(na), std::abs(nb), 1e-14});
}

std::vector<PairSample> sample_pairs(const BoundaryManifold& M, std::size_t count,
                                     double min_sep_frac, unsigned seed) {
  Rng rng(seed);
  double diam = M.diameter();
  std::vector<PairSample> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 20 * count + 100) {
    ++attempts;
    BoundaryPoint x = sample_point(M, rng);
    double sep = rng.log_uniform(min_sep_frac * diam, diam);
    BoundaryPoint y = sample_near(M, x, sep, rng);
    double d = norm(x.x - y.x);
    if (d < 0.25 * min_sep_frac * diam) continue;
    out.push_back(PairSample{x, y});
  }
  return out;
}

std::vector<TripleSample> sample_triples(const BoundaryManifold& M, std::size_t count,
                                         double min_sep_frac, unsigned seed) {
  Rng rng(seed);
  double diam = M.diameter();
  std::vector<TripleSample> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 40 * count + 100) {
    ++attempts;
    BoundaryPoint xp = sample_point(M, rng);
    double d_target = rng.log_uniform(min_sep_frac * diam, diam / 8.0);
    BoundaryPoint xpp = sample_near(M, xp, d_target, rng);
    double d = norm(xp.x - xpp.x);
    if (d < 0.25 * min_sep_frac * diam) continue;
    double fmax = 0.45 * diam / d;
    if (fmax <= 2.01) continue;
    double factor = rng.log_uniform(2.01, fmax);
    BoundaryPoint y = sample_near(M, xp, factor * d, rng);
    double D = norm(xp.x - y.x);
    if (D < (2.0 + 1e-9) * d) continue; // admissibility, with margin
    out.push_back(TripleSample{xp, xpp, y});
  }
  return out;
}

KernelClassEstimate class_norm(const Kernel& K, const BoundaryManifold& M,
                               const Exponents& e, unsigned seed, int level,
                               std::size_t base_samples, double min_sep_frac) {
  KernelClassEstimate est;
  est.exps = e;
  std::size_t max_pairs = base_samples << level;
  std::size_t max_triples = base_samples << level;
  auto pairs = sample_pairs(M, max_pairs, min_sep_frac, seed);
  auto triples = sample_triples(M, max_triples, min_sep_frac, seed + 1);

  double first = 0.0, second = 0.0;
  std::size_t pi = 0, ti = 0;
  for (int lev = 0; lev <= level; ++lev) {
    std::size_t pgoal = std::min(pairs.size(), base_samples << lev);
    std::size_t tgoal = std::min(triples.size(), base_samples << lev);
    for (; pi < pgoal; ++pi) {
      const auto& p = pairs[pi];
      double d = norm(p.x.x - p.y.x);
      double q = std::pow(d, e.s1) * std::abs(eval_checked(K, p.x, p.y));
      first = std::max(first, q);
    }
    for (; ti < tgoal; ++ti) {
      const auto& t = triples[ti];
      double d = norm(t.xp.x - t.xpp.x);
      double D = norm(t.xp.x - t.y.x);
      Complex diff = eval_checked(K, t.xp, t.y) - eval_checked(K, t.xpp, t.y);
      double q = std::pow(D, e.s2) * std::pow(d, -e.s3) * std::abs(diff);
      second = std::max(second, q);
    }
    est.trace.push_back(TraceEntry{lev, first, second, pi, ti});
  }
  est.first_sup = first;
  est.second_sup = second;
  est.n_pairs = pi;
  est.n_triples = ti;
  return est;
}

std::vector<double> dyadic_radii(const BoundaryManifold& M, double min_frac) {
  std::vector<double> radii;
  double diam = M.diameter();
  for (double r = diam; r >= min_frac * diam * 0.999; r *= 0.5) radii.push_back(r);
  return radii;
}

double sharp_norm(const Kernel& K, const BoundaryManifold& M, int level,
                  const std::vector<double>& radii, int max_targets) {
  QuadratureRule rule = M.quadrature(level);
  std::size_t stride = 1;
  while (rule.size() / stride > static_cast<std::size_t>(max_targets)) stride *= 2;

  std::vector<double> rsorted = radii;
  std::sort(rsorted.begin(), rsorted.end(), std::greater<double>());

  double sup = 0.0;
  std::vector<std::pair<double, Complex>> contrib; // (distance, w*K)
  for (std::size_t i = 0; i < rule.size(); i += stride) {
    const BoundaryPoint& x = rule.points[i];
    contrib.clear();
    contrib.reserve(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
      double d = norm(rule.points[j].x - x.x);
      if (d < rsorted.back()) continue; // inside the smallest ball always
      contrib.emplace_back(d, rule.weights[j] * eval_checked(K, x, rule.points[j]));
    }
    std::sort(contrib.begin(), contrib.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Complex acc = 0.0;
    std::size_t k = 0;
    for (double r : rsorted) {
      while (k < contrib.size() && contrib[k].first >= r) {
        acc += contrib[k].second;
        ++k;
      }
      sup = std::max(sup, std::abs(acc));
    }
  }
  return sup;
}

Kernel xi_kernel(const BoundaryFunction& mu) {
  Kernel K;
  K.name = "difference";
  K.eval = [mu](const BoundaryPoint& x, const BoundaryPoint& y) {
    return mu.value(x.x) - mu.value(y.x);
  };
  return K;
}

HomogeneousKernel homogeneous_kernel(std::function<Complex(const Vec&)> k, double h,
                                     int n) {
  Rng rng(20240u + static_cast<unsigned>(n));
  for (int i = 0; i < 64; ++i) {
    Vec x = Vec::zero(n);
    double m = 0.0;
    while (m < 0.1) {
      for (int j = 0; j < n; ++j) x[j] = 2.0 * rng.uniform() - 1.0;
      m = norm(x);
    }
    double t = rng.log_uniform(0.25, 4.0);
    Complex lhs = k(t * x);
    Complex rhs = std::pow(t, -h) * k(x);
    if (std::abs(lhs - rhs) > 1e-8 * std::max(1e-30, std::abs(rhs)))
      throw NotHomogeneous("function is not positively homogeneous of degree " +
                           std::to_string(-h));
  }
  HomogeneousKernel out;
  out.kernel.name = "convolution";
  out.kernel.eval = [k](const BoundaryPoint& x, const BoundaryPoint& y) {
    return k(x.x - y.x);
  };
  out.advertised = Exponents{h, h + 1.0, 1.0};
  return out;
}

AlgebraReport verify_algebra(const Kernel& K1, const Exponents& e1, const Kernel& K2,
                             const Exponents& e2, const BoundaryManifold& M,
                             unsigned seed, std::size_t n_triples,
                             std::function<Complex(const Vec&, double)> F,
                             double lipF) {
  AlgebraReport rep;
  double diam = M.diameter();
  auto triples = sample_triples(M, n_triples, 1e-5, seed);
  auto extra_pairs = sample_pairs(M, std::max<std::size_t>(512, n_triples / 4), 1e-5, seed + 7);

  // Norm estimates over sample sets containing every configuration checked
  // below.
  struct Norms {
    double first = 0.0, second = 0.0;
  };
  auto estimate = [&](const Kernel& K, const Exponents& e) {
    Norms nm;
    for (const auto& p : extra_pairs) {
      double d = norm(p.x.x - p.y.x);
      nm.first = std::max(nm.first, std::pow(d, e.s1) * std::abs(K.eval(p.x, p.y)));
    }
    for (const auto& t : triples) {
      double d = norm(t.xp.x - t.xpp.x);
      double D = norm(t.xp.x - t.y.x);
      nm.first = std::max(nm.first, std::pow(D, e.s1) * std::abs(K.eval(t.xp, t.y)));
      double dpp = norm(t.xpp.x - t.y.x);
      nm.first = std::max(nm.first, std::pow(dpp, e.s1) * std::abs(K.eval(t.xpp, t.y)));
      Complex diff = K.eval(t.xp, t.y) - K.eval(t.xpp, t.y);
      nm.second =
          std::max(nm.second, std::pow(D, e.s2) * std::pow(d, -e.s3) * std::abs(diff));
    }
    return nm;
  };
  Norms n1 = estimate(K1, e1), n2 = estimate(K2, e2);

  // (a) product difference inequality
  {
    AlgebraCheck c;
    c.name = "product-difference";
    c.n = triples.size();
    double N1 = n1.first + n1.second, N2 = n2.first + n2.second;
    for (const auto& t : triples) {
      double d = norm(t.xp.x - t.xpp.x);
      double D = norm(t.xp.x - t.y.x);
      Complex lhs = K1.eval(t.xp, t.y) * K2.eval(t.xp, t.y) -
                    K1.eval(t.xpp, t.y) * K2.eval(t.xpp, t.y);
      double rhs = N1 * N2 *
                   (std::pow(d, e1.s3) / std::pow(D, e1.s2 + e2.s1) +
                    std::pow(2.0, std::abs(e1.s1)) * std::pow(d, e2.s3) /
                        std::pow(D, e2.s2 + e1.s1));
      if (rhs == 0.0) continue;
      double ratio = std::abs(lhs) / rhs;
      if (ratio > c.worst) {
        c.worst = ratio;
        std::ostringstream w;
        w << "d=" << d << " D=" << D;
        c.witness = w.str();
      }
    }
    c.pass = c.worst <= 1.0 + 1e-12;
    rep.checks.push_back(c);
  }

  // (b) embeddings: plain norm dominance, monotone exponent shift, and the
  // reduction by a positive amount on both second-supremum exponents
  {
    AlgebraCheck c;
    c.name = "embedding-first-sup";
    c.n = 2;
    c.worst = std::max(n1.first / std::max(n1.first + n1.second, 1e-300),
                       n2.first / std::max(n2.first + n2.second, 1e-300));
    c.pass = c.worst <= 1.0 + 1e-12;
    rep.checks.push_back(c);
  }
  {
    AlgebraCheck c;
    c.name = "embedding-monotone";
    Exponents t1{e1.s1 + 0.5, e1.s2 + 0.5, e1.s3};
    double C = std::max(1.0, std::pow(diam, t1.s1 - e1.s1));
    C = std::max(C, std::pow(diam, (t1.s2 - t1.s3) - (e1.s2 - e1.s3)));
    Norms nt = estimate(K1, t1);
    double bound = 1.05 * C * (n1.first + n1.second);
    c.n = triples.size();
    c.worst = (nt.first + nt.second) / std::max(bound, 1e-300);
    c.pass = (nt.first + nt.second) <= bound || (nt.first + nt.second) < 1e-300;
    rep.checks.push_back(c);
  }
  {
    AlgebraCheck c;
    c.name = "embedding-reduction";
    double a = 0.5;
    Exponents t1{e1.s1, e1.s2 - a, e1.s3 - a};
    Norms nt = estimate(K1, t1);
    double bound = 1.05 * std::max(1.0, std::pow(diam, a)) * (n1.first + n1.second);
    c.n = triples.size();
    c.worst = (nt.first + nt.second) / std::max(bound, 1e-300);
    c.pass = (nt.first + nt.second) <= bound || (nt.first + nt.second) < 1e-300;
    rep.checks.push_back(c);
  }

  // (c) two-sided comparison on every emitted triple
  {
    AlgebraCheck c;
    c.name = "triple-comparison";
    c.n = triples.size();
    for (const auto& t : triples) {
      double D = norm(t.xp.x - t.y.x);
      double dpp = norm(t.xpp.x - t.y.x);
      double d = norm(t.xp.x - t.xpp.x);
      bool admissible = D >= 2.0 * d;
      bool two_sided = (0.5 * D <= dpp) && (dpp <= 2.0 * D);
      if (!admissible || !two_sided) {
        c.pass = false;
        std::ostringstream w;
        w << "d=" << d << " D=" << D << " D''=" << dpp;
        c.witness = w.str();
      }
    }
    rep.checks.push_back(c);
  }

  // (d) spherical Lipschitz bound
  if (F) {
    AlgebraCheck c;
    c.name = "sphere-lipschitz";
    c.n = triples.size();
    for (const auto& t : triples) {
      double D = norm(t.xp.x - t.y.x);
      double dpp = norm(t.xpp.x - t.y.x);
      double d = norm(t.xp.x - t.xpp.x);
      Vec thp = (1.0 / D) * (t.xp.x - t.y.x);
      Vec thpp = (1.0 / dpp) * (t.xpp.x - t.y.x);
      double lhs = std::abs(F(thp, D) - F(thpp, dpp));
      double rhs = lipF * (2.0 + diam) * d / D;
      double ratio = lhs / std::max(rhs, 1e-300);
      if (ratio > c.worst) c.worst = ratio;
    }
    c.pass = c.worst <= 1.0 + 1e-12;
    rep.checks.push_back(c);
  }

  return rep;
}

} // namespace layerpot
