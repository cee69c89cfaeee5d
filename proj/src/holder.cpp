#include "layerpot/holder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "layerpot/errors.hpp"

namespace layerpot {

Modulus Modulus::power(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw BadTheta("power modulus exponent must lie in ]0,1]");
  Modulus m;
  std::ostringstream s;
  s << "power(" << alpha << ")";
  m.name_ = s.str();
  m.exponent_ = alpha;
  m.f_ = [alpha](double r) { return r <= 0.0 ? 0.0 : std::pow(r, alpha); };
  return m;
}

double omega_theta(double theta, double r) {
  if (!(theta > 0.0) || theta > 1.0) throw BadTheta("theta must lie in ]0,1]");
  if (r <= 0.0) return 0.0;
  double r_theta = std::exp(-1.0 / theta);
  if (r <= r_theta) return std::pow(r, theta) * std::abs(std::log(r));
  return std::pow(r_theta, theta) * std::abs(std::log(r_theta));
}

Modulus Modulus::omega(double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw BadTheta("theta must lie in ]0,1]");
  Modulus m;
  std::ostringstream s;
  s << "omega(" << theta << ")";
  m.name_ = s.str();
  m.exponent_ = theta;
  m.f_ = [theta](double r) { return omega_theta(theta, r); };
  return m;
}

Modulus Modulus::max_of(std::vector<Modulus> parts) {
  if (parts.empty()) throw BadTheta("max_of requires at least one modulus");
  Modulus m;
  std::ostringstream s;
  s << "max(";
  double expo = parts.front().exponent();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s << ",";
    s << parts[i].name();
    expo = std::min(expo, parts[i].exponent());
  }
  s << ")";
  m.name_ = s.str();
  m.exponent_ = expo;
  m.f_ = [parts](double r) {
    double v = 0.0;
    for (const auto& p : parts) v = std::max(v, p(r));
    return v;
  };
  return m;
}

Modulus Modulus::custom(std::function<double(double)> f, std::string name,
                        double exponent) {
  Modulus m;
  m.f_ = std::move(f);
  m.name_ = std::move(name);
  m.exponent_ = exponent;
  return m;
}

ModulusCheck check_modulus(const Modulus& m) {
  ModulusCheck c;
  c.zero_at_zero = m(0.0) == 0.0;
  c.positive = true;
  c.increasing = true;
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double t = std::pow(10.0, -8.0 + 9.0 * i / 200.0); // up to 10
    double v = m(t);
    if (!(v > 0.0)) c.positive = false;
    if (v < prev - 1e-14 * std::max(1.0, prev)) c.increasing = false;
    prev = v;
  }
  double sup = 0.0;
  for (int ia = 0; ia <= 32; ++ia) {
    double a = std::pow(10.0, 4.0 * ia / 32.0);
    for (int it = 0; it <= 40; ++it) {
      double t = std::pow(10.0, -8.0 + 9.0 * it / 40.0);
      sup = std::max(sup, m(a * t) / (a * m(t)));
    }
  }
  c.scaling_sup = sup;
  return c;
}

namespace {

std::vector<ScaleBucket> make_buckets(double lo, double hi, int count) {
  std::vector<ScaleBucket> buckets(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    buckets[static_cast<std::size_t>(i)].lo = lo * std::pow(hi / lo, double(i) / count);
    buckets[static_cast<std::size_t>(i)].hi =
        lo * std::pow(hi / lo, double(i + 1) / count);
  }
  return buckets;
}

void bucket_insert(std::vector<ScaleBucket>& buckets, double sep, double q) {
  if (buckets.empty()) return;
  double lo = buckets.front().lo, hi = buckets.back().hi;
  if (sep < lo || sep <= 0.0) return;
  int idx = static_cast<int>(std::floor(std::log(sep / lo) / std::log(hi / lo) *
                                        static_cast<double>(buckets.size())));
  idx = std::clamp(idx, 0, static_cast<int>(buckets.size()) - 1);
  auto& b = buckets[static_cast<std::size_t>(idx)];
  b.max_quotient = std::max(b.max_quotient, q);
  b.count += 1;
}

} // namespace

HolderEstimate holder_seminorm(const BoundaryFunction& f, const BoundaryManifold& M,
                               const Modulus& m, unsigned seed, int level,
                               std::size_t base_samples) {
  HolderEstimate est;
  est.modulus_name = m.name();
  double diam = M.diameter();
  auto pairs = sample_pairs(M, base_samples << level, 1e-5, seed);
  est.table = make_buckets(1e-5 * diam, diam, 24);

  double sup = 0.0;
  std::size_t pi = 0;
  for (int lev = 0; lev <= level; ++lev) {
    std::size_t goal = std::min(pairs.size(), base_samples << lev);
    for (; pi < goal; ++pi) {
      const auto& p = pairs[pi];
      double sep = norm(p.x.x - p.y.x);
      double w = m(sep);
      if (w <= 0.0) continue;
      double q = std::abs(f.value(p.x.x) - f.value(p.y.x)) / w;
      sup = std::max(sup, q);
      bucket_insert(est.table, sep, q);
    }
    est.trace.push_back(sup);
  }
  est.seminorm = sup;
  if (est.trace.size() >= 2) {
    double a = est.trace[est.trace.size() - 2], b = est.trace.back();
    est.stable = std::abs(b - a) <= 0.05 * std::max({a, b, 1e-14});
  }
  return est;
}

HolderEstimate quotient_table(const std::vector<Vec>& pts,
                              const std::vector<Complex>& vals, const Modulus& m,
                              double min_sep) {
  HolderEstimate est;
  est.modulus_name = m.name();
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      diam = std::max(diam, norm(pts[i] - pts[j]));
  if (diam <= 0.0) return est;
  est.table = make_buckets(std::max(min_sep, 1e-12), diam * 1.0000001, 24);
  double sup = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double sep = norm(pts[i] - pts[j]);
      if (sep < min_sep) continue;
      double w = m(sep);
      if (w <= 0.0) continue;
      double q = std::abs(vals[i] - vals[j]) / w;
      sup = std::max(sup, q);
      bucket_insert(est.table, sep, q);
    }
  }
  est.seminorm = sup;
  est.trace.push_back(sup);
  return est;
}

PairBoundReport separated_pair_bound_check(const BoundaryFunction& f,
                                           const BoundaryManifold& M, const Modulus& m,
                                           double a, unsigned seed,
                                           std::size_t samples) {
  if (!(a > 0.0)) throw HypothesisViolated("separation must be positive");
  PairBoundReport rep;
  auto pairs = sample_pairs(M, samples, 1e-4, seed);
  double supf = 0.0;
  for (const auto& p : pairs) {
    supf = std::max(supf, std::abs(f.value(p.x.x)));
    supf = std::max(supf, std::abs(f.value(p.y.x)));
  }
  rep.bound = 2.0 * supf / m(a);
  for (const auto& p : pairs) {
    double sep = norm(p.x.x - p.y.x);
    if (sep < a) continue;
    ++rep.n;
    double q = std::abs(f.value(p.x.x) - f.value(p.y.x)) / m(sep);
    rep.observed = std::max(rep.observed, q);
  }
  rep.pass = rep.observed <= rep.bound * (1.0 + 1e-12);
  return rep;
}

MappingCase classify_mapping(int n, double s1, double t1, double t2, double t3,
                             double beta) {
  auto fail = [](const std::string& what) { throw HypothesisViolated(what); };
  if (n < 2) fail("dimension must be at least 2");
  double nm1 = n - 1.0;
  if (!(s1 >= 0.0 && s1 < nm1)) fail("s1 outside [0, n-1)");
  if (!(beta > 0.0 && beta <= 1.0)) fail("beta outside ]0,1]");
  if (!(t1 >= beta && t1 < nm1 + beta)) fail("t1 outside [beta, (n-1)+beta)");
  if (!(t2 >= beta)) fail("t2 below beta");
  if (!(t3 > 0.0 && t3 <= 1.0)) fail("t3 outside ]0,1]");

  const double tol = 1e-12;
  std::string group;
  if (t1 < nm1 - tol)
    group = "i";
  else if (t1 > nm1 + tol)
    group = "iii";
  else
    group = "ii";

  double d = t2 - beta;
  MappingCase out;
  if (std::abs(d - nm1) <= tol) {
    // borderline: max of the power modulus and the log-corrected one
    std::vector<Modulus> parts{Modulus::power(beta)};
    if (group == "iii") {
      double e = nm1 + beta - t1;
      parts.push_back(Modulus::power(e));
    }
    parts.push_back(Modulus::omega(t3));
    out.target = Modulus::max_of(parts);
    out.label = group + "." + (group == "i" ? "aa" : group == "ii" ? "bb" : "cc");
    return out;
  }
  if (d < nm1) fail("t2 - beta below n-1");
  if (!(t2 < nm1 + beta + t3)) fail("t2 not below (n-1)+beta+t3");
  double e = std::min(beta, nm1 + t3 + beta - t2);
  if (group == "iii") e = std::min(e, nm1 + beta - t1);
  out.target = Modulus::power(e);
  out.label = group + "." + (group == "i" ? "a" : group == "ii" ? "b" : "c");
  return out;
}

RegularityReport regularity_report(const FundamentalSolution& S,
                                   const BoundaryManifold& M,
                                   const std::vector<NamedDensity>& densities,
                                   double beta, int level, unsigned seed) {
  if (M.dim() != 2)
    throw BadDimension("regularity report differentiates along a curve");
  RegularityReport rep;
  rep.beta = beta;
  MappingCase mc = classify_mapping(2, 0.1, 1.0, 2.0, 1.0, beta);
  rep.mapping_label = mc.label;
  rep.predicted_modulus = mc.target.name();

  // companion tables against the next-stronger power modulus (the plain
  // power(1) for beta = 1); reported as a diagnostic alongside the target
  Modulus strong_mod = Modulus::power(std::min(1.0, beta + 0.1));
  const bool strong = true;

  const int n_levels = 3;
  for (const auto& den : densities) {
    RegularityEntry entry;
    entry.density = den.name;
    entry.mu_seminorm =
        holder_seminorm(den.f, M, Modulus::power(beta), seed, 3).seminorm;

    for (int lev = level; lev < level + n_levels; ++lev) {
      int N = 32 << lev;
      double h = 2.0 * M_PI / N;
      std::vector<Complex> w(static_cast<std::size_t>(N));
      std::vector<Vec> pts(static_cast<std::size_t>(N));
      std::vector<double> jacs(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) {
        Param u{0, h * i, 0.0};
        BoundaryPoint p = M.at(u);
        pts[static_cast<std::size_t>(i)] = p.x;
        jacs[static_cast<std::size_t>(i)] = p.jac;
        w[static_cast<std::size_t>(i)] = eval_W(S, M, den.f, u, lev + 3).value;
      }
      // arclength derivative by centered differences on the periodic grid
      std::vector<Complex> dw(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) {
        int ip = (i + 1) % N, im = (i + N - 1) % N;
        dw[static_cast<std::size_t>(i)] =
            (w[static_cast<std::size_t>(ip)] - w[static_cast<std::size_t>(im)]) /
            (2.0 * h * jacs[static_cast<std::size_t>(i)]);
      }
      double min_sep = 0.9 * norm(pts[0] - pts[1]);
      HolderEstimate tab = quotient_table(pts, dw, mc.target, min_sep);
      entry.tables.push_back(tab);
      entry.seminorm_by_level.push_back(tab.seminorm);
      if (strong) {
        HolderEstimate stab = quotient_table(pts, dw, strong_mod, min_sep);
        entry.strong_seminorm_by_level.push_back(stab.seminorm);
      }
    }
    std::size_t L = entry.seminorm_by_level.size();
    double last = entry.seminorm_by_level[L - 1];
    double prev = entry.seminorm_by_level[L - 2];
    // a table that sits at the quadrature noise floor counts as stable
    double floor = 1e-6 * std::max(entry.mu_seminorm, 1e-12);
    entry.stable = std::abs(last - prev) <= 0.05 * std::max({last, prev, 1e-14}) ||
                   std::max(last, prev) <= floor;
    entry.ratio = entry.mu_seminorm > 0.0 ? last / entry.mu_seminorm : 0.0;
    if (strong && !entry.strong_seminorm_by_level.empty()) {
      double first = entry.strong_seminorm_by_level.front();
      entry.strong_growth =
          first > 0.0 ? entry.strong_seminorm_by_level.back() / first : 0.0;
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

} // namespace layerpot
