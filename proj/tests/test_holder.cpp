#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "layerpot/holder.hpp"
#include "layerpot/errors.hpp"

using namespace layerpot;

namespace {

BoundaryFunction param_function(const std::shared_ptr<BoundaryManifold>& M,
                                std::function<Complex(double)> g) {
  return BoundaryFunction{
      [M, g](const Vec& p) { return g(M->param_of(p).a); }, nullptr};
}

// Unit circle with a non-uniform angular parametrization phi(t) = t + c sin t.
class ReparamCircle : public BoundaryManifold {
 public:
  ReparamCircle() {
    dim_ = 2;
    inside_ = Vec(0.0, 0.0);
  }
  Vec point(const Param& u) const override {
    double phi = warp(u.a);
    return Vec(std::cos(phi), std::sin(phi));
  }
  Vec normal(const Param& u) const override { return point(u); }
  double jacobian(const Param& u) const override { return 1.0 + 0.3 * std::cos(u.a); }
  Param param_of(const Vec& x) const override {
    double phi = std::atan2(x[1], x[0]);
    // invert the strictly increasing warp by bisection
    double lo = phi - 0.35, hi = phi + 0.35;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (lo + hi);
      if (warp(mid) < phi)
        lo = mid;
      else
        hi = mid;
    }
    double t = std::fmod(0.5 * (lo + hi), 2.0 * M_PI);
    if (t < 0) t += 2.0 * M_PI;
    return Param{0, t, 0.0};
  }
  Vec radial_project(const Vec& z) const override { return (1.0 / norm(z)) * z; }
  std::string id() const override { return "reparam-circle"; }

 private:
  static double warp(double t) { return t + 0.3 * std::sin(t); }
};

} // namespace

TEST_CASE("log-corrected modulus values") {
  CHECK(omega_theta(1.0, std::exp(-1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(omega_theta(0.3, 0.0) == 0.0);
  CHECK(omega_theta(0.7, 0.0) == 0.0);
  // constant tail beyond r_theta = exp(-2): value 2/e
  for (double r : {std::exp(-2.0), 0.5, 10.0}) {
    CHECK(omega_theta(0.5, r) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(omega_theta(0.0, 0.5), BadTheta);
  CHECK_THROWS_AS(omega_theta(1.5, 0.5), BadTheta);
  CHECK_THROWS_AS(Modulus::omega(-1.0), BadTheta);
}

TEST_CASE("modulus condition holds on the grid for the whole family") {
  std::vector<Modulus> family = {
      Modulus::power(0.25), Modulus::power(1.0), Modulus::omega(0.5),
      Modulus::omega(1.0),
      Modulus::max_of({Modulus::power(0.5), Modulus::omega(0.7)})};
  for (const auto& m : family) {
    auto c = check_modulus(m);
    INFO(m.name());
    CHECK(c.zero_at_zero);
    CHECK(c.positive);
    CHECK(c.increasing);
    CHECK(std::isfinite(c.scaling_sup));
    CHECK(c.scaling_sup > 0.0);
  }
}

TEST_CASE("log-corrected modulus is concave and increasing on a grid") {
  for (double theta : {0.3, 0.7, 1.0}) {
    double r_theta = std::exp(-1.0 / theta);
    int N = 400;
    double lo = 1e-6, hi = 2.0 * r_theta;
    double prev = 0.0, prev_diff = 1e300;
    for (int i = 0; i <= N; ++i) {
      double r = lo + (hi - lo) * i / N;
      double v = omega_theta(theta, r);
      if (i > 0) {
        double diff = v - prev;
        CHECK(diff >= -1e-12);
        if (i > 1) CHECK(diff <= prev_diff + 1e-12); // second differences <= 0
        prev_diff = diff;
      }
      prev = v;
    }
  }
}

TEST_CASE("modulus comparison inequalities behind the embedding chain") {
  // r^theta |ln r| >= r^theta for r <= 1/e
  for (double theta : {0.3, 0.8, 1.0}) {
    for (int i = 0; i < 60; ++i) {
      double r = std::pow(10.0, -8.0 + 7.0 * i / 60.0); // up to ~0.1 < 1/e
      if (r > std::exp(-1.0 / theta)) continue;
      CHECK(omega_theta(theta, r) >= std::pow(r, theta));
    }
  }
  // omega_theta(r) <= C r^{theta'} on ]0,1] with a finite grid constant
  double theta = 0.6, theta_p = 0.4;
  double C = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double r = std::pow(10.0, -8.0 + 8.0 * i / 200.0);
    C = std::max(C, omega_theta(theta, r) / std::pow(r, theta_p));
  }
  CHECK(std::isfinite(C));
  for (int i = 0; i <= 200; ++i) {
    double r = std::pow(10.0, -8.0 + 8.0 * i / 200.0);
    CHECK(omega_theta(theta, r) <= C * std::pow(r, theta_p) * (1.0 + 1e-12));
  }
}

TEST_CASE("seminorm of constants and of the first coordinate") {
  auto M = make_circle(1.0);
  BoundaryFunction constf{[](const Vec&) { return Complex(2.5); }, nullptr};
  auto zero = holder_seminorm(constf, *M, Modulus::power(0.5), 3, 2);
  CHECK(zero.seminorm == 0.0);

  BoundaryFunction x1{[](const Vec& p) { return Complex(p[0]); }, nullptr};
  auto est = holder_seminorm(x1, *M, Modulus::power(1.0), 3, 3);
  CHECK(est.seminorm <= 1.0 + 1e-12);
  CHECK(est.seminorm >= 0.98);
  CHECK(est.stable);
}

TEST_CASE("seminorm estimates do not depend on the parametrization") {
  auto standard = make_circle(1.0);
  auto reparam = std::make_shared<ReparamCircle>();
  // sanity: same point set, consistent normals
  CHECK(std::abs(reparam->quadrature(2).total_weight() - 2 * M_PI) < 1e-10);
  BoundaryFunction x1{[](const Vec& p) { return Complex(p[0]); }, nullptr};
  for (const auto& m : {Modulus::power(1.0), Modulus::power(0.5)}) {
    double a = holder_seminorm(x1, *standard, m, 9, 3).seminorm;
    double b = holder_seminorm(x1, *reparam, m, 9, 3).seminorm;
    CHECK(std::abs(a - b) <= 0.02 * std::max(a, b));
  }
}

TEST_CASE("grid quotient tables discriminate the half-power profile") {
  auto M = make_circle(1.0);
  double t0 = 1.0;
  auto f = [t0](double t) { return Complex(std::pow(std::abs(std::sin((t - t0) / 2.0)), 0.5)); };
  std::vector<double> sup_ok, sup_strong;
  for (int lev = 0; lev < 5; ++lev) {
    int N = 32 << lev;
    std::vector<Vec> pts;
    std::vector<Complex> vals;
    for (int i = 0; i < N; ++i) {
      double t = 2.0 * M_PI * i / N + 0.5 * M_PI / N; // keep nodes off the cusp
      pts.push_back(M->point(Param{0, t, 0.0}));
      vals.push_back(f(t));
    }
    double min_sep = 0.9 * norm(pts[0] - pts[1]);
    sup_ok.push_back(quotient_table(pts, vals, Modulus::power(0.5), min_sep).seminorm);
    sup_strong.push_back(
        quotient_table(pts, vals, Modulus::power(0.6), min_sep).seminorm);
  }
  // matched modulus: bounded, stabilizing
  CHECK(std::abs(sup_ok.back() - sup_ok[sup_ok.size() - 2]) <=
        0.05 * sup_ok.back());
  // too-strong modulus: grows like (grid spacing)^{-0.1}
  CHECK(sup_strong.back() / sup_strong.front() >= 1.2);
  CHECK(sup_strong.back() > sup_strong[sup_strong.size() - 2]);
}

TEST_CASE("separated pair bound holds for every sample") {
  auto M = make_circle(1.0);
  BoundaryFunction one{[](const Vec&) { return Complex(1.0); }, nullptr};
  auto rep1 = separated_pair_bound_check(one, *M, Modulus::power(1.0), 1.0, 5);
  CHECK(rep1.pass);
  CHECK(rep1.observed == 0.0);
  CHECK(rep1.bound == doctest::Approx(2.0));

  BoundaryFunction x1{[](const Vec& p) { return Complex(p[0]); }, nullptr};
  auto rep2 = separated_pair_bound_check(x1, *M, Modulus::omega(1.0), 0.5, 7);
  CHECK(rep2.pass);
  CHECK(rep2.n > 100);

  // random trigonometric polynomial against several moduli
  auto trig = param_function(M, [](double t) {
    return Complex(0.7 * std::cos(3 * t) - 0.2 * std::sin(5 * t) + 0.1 * std::cos(t));
  });
  for (const auto& m : {Modulus::power(0.3), Modulus::omega(0.8)}) {
    auto rep = separated_pair_bound_check(trig, *M, m, 0.2, 11);
    CHECK(rep.pass);
  }
}

TEST_CASE("mapping classification reference cases") {
  // smooth-boundary setting: alpha-dependent exponents
  double alpha = 0.6, beta = 0.7; // alpha + beta > 1, beta < 1
  auto c1 = classify_mapping(3, 2.0 - alpha, 3.0 - alpha, 3.0, alpha, beta);
  CHECK(c1.label == "iii.c");
  CHECK(c1.target.exponent() == doctest::Approx(alpha + beta - 1.0));

  auto c2 = classify_mapping(3, 1.0, 2.0, 3.0, 1.0, 0.7);
  CHECK(c2.label == "ii.b");
  CHECK(c2.target.exponent() == doctest::Approx(0.7));

  auto c3 = classify_mapping(3, 1.0, 2.0, 3.0, 1.0, 1.0);
  CHECK(c3.label == "ii.bb");
  CHECK(c3.target.exponent() == doctest::Approx(1.0));
  // max(r, omega_1) equals omega_1 below the cap
  for (double r : {1e-4, 1e-2, 0.2}) {
    CHECK(c3.target(r) == doctest::Approx(omega_theta(1.0, r)));
  }
}

TEST_CASE("mapping classification rejects out-of-scope exponents") {
  CHECK_THROWS_AS(classify_mapping(3, -0.1, 2.0, 3.0, 1.0, 0.5), HypothesisViolated);
  CHECK_THROWS_AS(classify_mapping(3, 1.0, 0.1, 3.0, 1.0, 0.5), HypothesisViolated);
  CHECK_THROWS_AS(classify_mapping(3, 1.0, 2.0, 3.5, 0.5, 0.5), HypothesisViolated);
  CHECK_THROWS_AS(classify_mapping(3, 1.0, 2.0, 2.2, 1.0, 0.5), HypothesisViolated);
  CHECK_THROWS_AS(classify_mapping(2, 0.5, 1.0, 2.0, 2.0, 0.5), HypothesisViolated);
}

TEST_CASE("regularity ratios are invariant under power-of-two density scaling") {
  auto S = make_laplace(2);
  auto M = make_ellipse(2.0, 1.0);
  auto base = param_function(M, [](double t) { return Complex(std::cos(t)); });
  auto scaled = param_function(M, [](double t) { return Complex(2.0 * std::cos(t)); });
  std::vector<NamedDensity> ds = {{"cos", base}, {"2cos", scaled}};
  auto rep = regularity_report(S, *M, ds, 0.5, 1, 17);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].ratio == doctest::Approx(rep.entries[1].ratio).epsilon(1e-12));
  CHECK(rep.entries[0].stable);
  CHECK(rep.entries[0].seminorm_by_level.back() > 0.0);
  CHECK(rep.mapping_label == "ii.b");
}

TEST_CASE("regularity report rejects surfaces and zero densities vanish") {
  auto S3 = make_laplace(3);
  auto sphere = make_sphere(1.0);
  std::vector<NamedDensity> ds = {
      {"zero", BoundaryFunction{[](const Vec&) { return Complex(0.0); }, nullptr}}};
  CHECK_THROWS_AS(regularity_report(S3, *sphere, ds, 0.5, 1, 3), BadDimension);

  auto S = make_laplace(2);
  auto M = make_circle(1.0);
  auto rep = regularity_report(S, *M, ds, 0.5, 0, 3);
  CHECK(rep.entries[0].seminorm_by_level.back() == 0.0);
  CHECK(rep.entries[0].mu_seminorm == 0.0);
}
