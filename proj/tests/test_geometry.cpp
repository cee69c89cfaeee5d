#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "layerpot/geometry.hpp"
#include "layerpot/errors.hpp"
#include "oracles.hpp"

using namespace layerpot;

TEST_CASE("circle parametrization and normals") {
  auto M = make_circle(1.0);
  for (double t : {0.0, 0.7, 2.0, 5.5}) {
    Param u{0, t, 0.0};
    Vec p = M->point(u);
    CHECK(p[0] == doctest::Approx(std::cos(t)).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(std::sin(t)).epsilon(1e-15));
    Vec nu = M->normal(u);
    CHECK(norm(nu - p) < 1e-15);
  }
}

TEST_CASE("quadrature weights reproduce measures") {
  auto circle = make_circle(1.0);
  CHECK(std::abs(circle->quadrature(0).total_weight() - 2 * M_PI) < 1e-12);

  auto sphere2 = make_sphere(2.0);
  CHECK(std::abs(sphere2->quadrature(1).total_weight() - 16 * M_PI) < 1e-8);

  auto sphere = make_sphere(1.0);
  CHECK(std::abs(sphere->quadrature(2).total_weight() - 4 * M_PI) < 1e-8);
}

TEST_CASE("ellipse perimeter against adaptive arclength oracle") {
  double a = 2.0, b = 1.0;
  double per = oracles::adaptive_simpson(
      [a, b](double t) {
        double dx = -a * std::sin(t), dy = b * std::cos(t);
        return std::sqrt(dx * dx + dy * dy);
      },
      0.0, 2 * M_PI, 1e-13);
  CHECK(per == doctest::Approx(9.6884482205).epsilon(1e-9));
  auto M = make_ellipse(a, b);
  CHECK(std::abs(M->quadrature(3).total_weight() - per) < 1e-10);
}

TEST_CASE("unit normals and outward orientation at quadrature nodes") {
  std::vector<std::shared_ptr<BoundaryManifold>> shapes = {
      make_circle(1.0), make_ellipse(2.0, 1.0), make_star(0.03, 5),
      make_sphere(1.0), make_ellipsoid(1.0, 1.0, 2.0)};
  for (const auto& M : shapes) {
    auto rule = M->quadrature(1);
    for (std::size_t i = 0; i < rule.size(); i += 7) {
      const auto& p = rule.points[i];
      CHECK(std::abs(norm(p.nu) - 1.0) < 1e-12);
      CHECK(dot(p.x - M->inside_point(), p.nu) > 0.0);
      CHECK(p.jac > 0.0);
    }
  }
}

TEST_CASE("shape parameter validation") {
  CHECK_THROWS_AS(make_circle(-1.0), BadShapeParameters);
  CHECK_THROWS_AS(make_ellipse(0.0, 1.0), BadShapeParameters);
  CHECK_THROWS_AS(make_star(0.2, 5), BadShapeParameters); // c >= 1/(1+k^2)
  CHECK_THROWS_AS(make_star(-0.01, 5), BadShapeParameters);
  CHECK_THROWS_AS(make_sphere(0.0), BadShapeParameters);
  CHECK_THROWS_AS(make_boundary("circle:R=-1"), BadShapeParameters);
  CHECK_THROWS_AS(make_boundary("blob:R=1"), BadShapeParameters);
  CHECK_THROWS_AS(make_boundary("circle"), BadShapeParameters);
  CHECK(make_boundary("star:c=0.03,k=5")->dim() == 2);
  CHECK(make_boundary("ellipsoid:a=1,b=1,c=2")->dim() == 3);
}

TEST_CASE("param_of and radial projection round trips") {
  std::vector<std::shared_ptr<BoundaryManifold>> shapes = {
      make_circle(1.5), make_ellipse(2.0, 1.0), make_star(0.03, 5),
      make_sphere(1.0), make_ellipsoid(1.0, 1.5, 2.0)};
  std::mt19937_64 rng(11);
  auto uni = [&rng]() { return std::ldexp(static_cast<double>(rng()), -64); };
  for (const auto& M : shapes) {
    auto rule = M->quadrature(0);
    for (std::size_t i = 0; i < rule.size(); i += 5) {
      Vec x = rule.points[i].x;
      Vec back = M->point(M->param_of(x));
      CHECK(norm(back - x) < 1e-12);
      // a point off the surface projects onto the same ray
      Vec z = (0.5 + uni()) * x;
      Vec proj = M->radial_project(z);
      CHECK(norm(proj - x) < 1e-12);
    }
  }
}

TEST_CASE("surface charts are consistent on overlaps") {
  auto M = make_ellipsoid(1.0, 1.5, 2.0);
  std::mt19937_64 rng(4);
  auto uni = [&rng]() { return std::ldexp(static_cast<double>(rng()), -64); };
  for (int i = 0; i < 64; ++i) {
    // equatorial band is covered by both charts
    Param u0{0, 1.2 * (uni() - 0.5), 2 * M_PI * uni()};
    Vec x = M->point(u0);
    Param u1{1, x[0] / 1.0, std::atan2(x[2] / 2.0, x[1] / 1.5)};
    Vec y = M->point(u1);
    CHECK(norm(x - y) < 1e-10);
    CHECK(norm(M->normal(u0) - M->normal(u1)) < 1e-10);
  }
}

TEST_CASE("trapezoid convergence is superalgebraic for smooth integrands") {
  auto M = make_ellipse(2.0, 1.0);
  auto integrate = [&M](int level) {
    auto rule = M->quadrature(level);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Vec& x = rule.points[i].x;
      s += rule.weights[i] * std::exp(std::sin(x[0]) + 0.2 * x[1]);
    }
    return s;
  };
  double ref = integrate(5);
  double e0 = std::abs(integrate(0) - ref);
  double e1 = std::abs(integrate(1) - ref);
  if (e0 < 1e-4) {
    // once below 1e-4, each refinement must gain at least a factor 1e3
    CHECK(e0 / std::max(e1, 1e-16) >= 1e3);
  } else {
    double e2 = std::abs(integrate(2) - ref);
    CHECK(e1 < 1e-4);
    CHECK(e1 / std::max(e2, 1e-16) >= 1e3);
  }
}

TEST_CASE("tangential derivative closed forms on the circle") {
  auto M = make_circle(1.0);
  BoundaryFunction constf{[](const Vec&) { return Complex(3.5); },
                          [](const Vec& x) { return CVec::zero(x.n); }};
  BoundaryFunction x1{[](const Vec& x) { return Complex(x[0]); },
                      [](const Vec& x) {
                        CVec g = CVec::zero(x.n);
                        g[0] = 1.0;
                        return g;
                      }};
  for (double t : {0.3, 1.2, 4.0}) {
    Param u{0, t, 0.0};
    CHECK(std::abs(tangential_derivative(*M, constf, 0, 1, u)) == 0.0);
    Complex m01 = tangential_derivative(*M, x1, 0, 1, u);
    CHECK(std::abs(m01 - Complex(-std::sin(t))) < 1e-14);
    // antisymmetry is exact
    Complex m10 = tangential_derivative(*M, x1, 1, 0, u);
    CHECK(m01 == -m10);
    CVec tg = tangential_gradient(*M, x1, u);
    CHECK(std::abs(tg[0] - Complex(std::sin(t) * std::sin(t))) < 1e-13);
    CHECK(std::abs(tg[1] - Complex(-std::sin(t) * std::cos(t))) < 1e-13);
  }
  CHECK_THROWS_AS(tangential_derivative(*M, x1, 0, 2, Param{0, 0.0, 0.0}),
                  IndexOutOfRange);
}

TEST_CASE("tangential gradient of the vertical coordinate on the sphere") {
  auto M = make_sphere(1.0);
  BoundaryFunction x3{[](const Vec& x) { return Complex(x[2]); },
                      [](const Vec& x) {
                        CVec g = CVec::zero(x.n);
                        g[2] = 1.0;
                        return g;
                      }};
  for (double u0 : {0.95, 0.5, -0.2, -0.9}) {
    Param u{0, u0, 0.4};
    CVec tg = tangential_gradient(*M, x3, u);
    double sinphi = std::sqrt(1.0 - u0 * u0);
    CHECK(std::abs(norm(tg) - sinphi) < 1e-10);
    CHECK(std::abs(dot(tg, M->normal(u))) < 1e-12);
  }
}

TEST_CASE("component identity between tangential gradient and pair derivatives") {
  std::vector<std::shared_ptr<BoundaryManifold>> shapes = {
      make_ellipse(2.0, 1.0), make_ellipsoid(1.0, 1.5, 2.0)};
  BoundaryFunction poly{
      [](const Vec& x) { return Complex(x[0] * x[0] - 2.0 * x[1] + x[2] * x[0]); },
      [](const Vec& x) {
        CVec g = CVec::zero(x.n);
        g[0] = 2.0 * x[0] + x[2];
        g[1] = -2.0;
        g[2] = x.n == 3 ? x[0] : 0.0;
        return g;
      }};
  for (const auto& M : shapes) {
    auto rule = M->quadrature(0);
    for (std::size_t i = 0; i < rule.size(); i += 9) {
      const Param& u = rule.points[i].u;
      Vec nu = rule.points[i].nu;
      CVec tg = tangential_gradient(*M, poly, u);
      for (int h = 0; h < M->dim(); ++h) {
        Complex sum = 0.0;
        for (int l = 0; l < M->dim(); ++l)
          sum += nu[l] * tangential_derivative(*M, poly, l, h, u);
        CHECK(std::abs(sum - tg[h]) < 1e-10);
      }
      CHECK(std::abs(dot(tg, nu)) < 1e-12);
    }
  }
}

TEST_CASE("parametric-only functions recover ambient partials") {
  auto M = make_ellipse(2.0, 1.0);
  // no gradient closure: forces the tangent-system path
  BoundaryFunction f{[](const Vec& x) { return Complex(std::sin(x[0]) * x[1]); }, nullptr};
  BoundaryFunction fg{[](const Vec& x) { return Complex(std::sin(x[0]) * x[1]); },
                      [](const Vec& x) {
                        CVec g = CVec::zero(x.n);
                        g[0] = std::cos(x[0]) * x[1];
                        g[1] = std::sin(x[0]);
                        return g;
                      }};
  for (double t : {0.2, 1.0, 2.8, 5.0}) {
    Param u{0, t, 0.0};
    CVec a = tangential_gradient(*M, f, u);
    CVec b = tangential_gradient(*M, fg, u);
    CHECK(norm(a - b) < 1e-6);
    Complex ma = tangential_derivative(*M, f, 0, 1, u);
    Complex mb = tangential_derivative(*M, fg, 0, 1, u);
    CHECK(std::abs(ma - mb) < 1e-6);
  }
}

TEST_CASE("diameters of the catalog shapes") {
  CHECK(make_circle(1.0)->diameter() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(make_ellipse(2.0, 1.0)->diameter() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(make_sphere(1.0)->diameter() == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(make_ellipsoid(1.0, 1.0, 2.0)->diameter() == doctest::Approx(4.0).epsilon(1e-2));
}
