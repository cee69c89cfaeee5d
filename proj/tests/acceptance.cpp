// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <vector>

#include "layerpot/holder.hpp"
#include "layerpot/suite.hpp"

using namespace layerpot;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

BoundaryFunction unit_density() {
  return BoundaryFunction{[](const Vec&) { return Complex(1.0); }, nullptr};
}

std::vector<FundamentalSolution> full_catalog() {
  std::vector<FundamentalSolution> cat;
  cat.push_back(make_laplace(2));
  cat.push_back(make_laplace(3));
  cat.push_back(make_anisotropic(Mat::diag2(4.0, 1.0)));
  Mat a3 = Mat::diag3(2.0, 1.0, 0.5);
  a3(0, 1) = a3(1, 0) = 0.25;
  cat.push_back(make_anisotropic(a3));
  cat.push_back(make_yukawa3d(1.0));
  cat.push_back(make_helmholtz3d(1.0));
  cat.push_back(make_yukawa2d(1.0));
  return cat;
}

// ------------------------------------------------------------ criteria ----

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  auto S = make_laplace(2);
  auto M = make_circle(1.0);
  auto rule = M->quadrature(2);
  double worst = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    WResult w = eval_W(S, *M, unit_density(), rule.points[i].u, 2);
    worst = std::max(worst, std::abs(w.value - Complex(0.5)));
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << "max |W[1]-1/2| = " << worst << " over " << rule.size() << " nodes, " << dt
    << " s";
  report("criterion 1 (unit density on the circle)", worst <= 1e-10 && dt < 1.0,
         d.str());
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  auto S = make_laplace(3);
  auto M = make_sphere(1.0);
  auto rule = M->quadrature(0);
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < rule.size(); i += rule.size() / 16) {
    WResult w = eval_W(S, *M, unit_density(), rule.points[i].u, 3);
    worst = std::max(worst, std::abs(w.value - Complex(0.5)));
    ++checked;
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << "max |W[1]-1/2| = " << worst << " over " << checked << " targets, " << dt
    << " s";
  report("criterion 2 (unit density on the sphere)", worst <= 1e-4 && dt < 60.0,
         d.str());
}

void criterion_3() {
  struct Pairing {
    FundamentalSolution S;
    std::shared_ptr<BoundaryManifold> M;
  };
  std::vector<Pairing> pairings;
  pairings.push_back({make_laplace(2), make_ellipse(2.0, 1.0)});
  pairings.push_back({make_yukawa2d(1.0), make_ellipse(2.0, 1.0)});
  pairings.push_back({make_laplace(3), make_sphere(1.0)});
  pairings.push_back({make_yukawa3d(1.0), make_sphere(1.0)});
  bool all = true;
  std::ostringstream d;
  for (const auto& [S, M] : pairings) {
    auto t0 = std::chrono::steady_clock::now();
    double diam = M->diameter();
    auto pairs = sample_pairs(*M, 4000, 0.05, 101);
    std::size_t checked = 0;
    double worst = 0.0;
    for (const auto& p : pairs) {
      if (checked >= 400) break;
      if (norm(p.x.x - p.y.x) < 0.1 * diam) continue;
      ++checked;
      CVec g = dlp_kernel_tangential_gradient(S, p.x, p.y);
      auto frame = tangent_frame(*M, p.x.u);
      double h = 1e-5;
      CVec fd = CVec::zero(M->dim());
      for (const Vec& t : frame) {
        BoundaryPoint xp = M->at(M->param_of(M->radial_project(p.x.x + h * t)));
        BoundaryPoint xm = M->at(M->param_of(M->radial_project(p.x.x - h * t)));
        Complex dk =
            (dlp_kernel(S, xp, p.y) - dlp_kernel(S, xm, p.y)) / norm(xp.x - xm.x);
        for (int c = 0; c < M->dim(); ++c) fd[c] += dk * t[c];
      }
      double kscale = std::abs(dlp_kernel(S, p.x, p.y)) / diam;
      double scale = std::max({norm(g), norm(fd), kscale, 1e-10});
      worst = std::max(worst, norm(fd - g) / scale);
    }
    double dt = seconds_since(t0);
    bool ok = checked >= 200 && worst <= 1e-6 && dt < 30.0;
    all = all && ok;
    d << S.id << " on " << M->id() << ": " << checked << " pairs, worst " << worst
      << ", " << dt << " s; ";
  }
  report("criterion 3 (tangential-gradient expansion vs differences)", all, d.str());
}

void criterion_4() {
  bool all = true;
  std::ostringstream d;
  for (const auto& S : full_catalog()) {
    std::shared_ptr<BoundaryManifold> M;
    if (S.id.rfind("anisotropic2d", 0) == 0)
      M = make_circle(1.0);
    else if (S.dim() == 2)
      M = make_ellipse(2.0, 1.0);
    else
      M = make_sphere(1.0);
    auto pairs = sample_pairs(*M, 10000, 1e-6, 77);
    double worst = 0.0;
    for (const auto& p : pairs) {
      Complex a = dlp_kernel(S, p.x, p.y);
      Complex b = dlp_kernel_reference(S, p.x, p.y);
      Vec z = p.x.x - p.y.x;
      Vec a2nu = mat_vec(S.coeffs.a2, p.y.nu);
      double scale = norm(gradient(S, z)) * norm(a2nu) +
                     std::abs(dot(S.coeffs.a1, p.y.nu)) * std::abs(value(S, z)) +
                     std::abs(a);
      worst = std::max(worst, std::abs(a - b) / std::max(scale, 1e-12));
    }
    bool ok = pairs.size() == 10000 && worst <= 1e-12;
    all = all && ok;
    d << S.id << ": " << worst << "; ";
  }
  report("criterion 4 (two-route kernel identity, 1e4 pairs each)", all, d.str());
}

void criterion_5() {
  struct Case {
    FundamentalSolution S;
    std::shared_ptr<BoundaryManifold> M;
  };
  std::vector<Case> cases;
  cases.push_back({make_laplace(2), make_circle(1.0)});
  cases.push_back({make_laplace(2), make_ellipse(2.0, 1.0)});
  cases.push_back({make_laplace(3), make_sphere(1.0)});
  bool all = true;
  std::ostringstream d;
  for (const auto& [S, M] : cases) {
    int n = M->dim();
    auto ek = class_norm(dlp_as_kernel(S), *M, Exponents{n - 2.0, n - 1.0, 1.0}, 5, 3, 8192);
    bool ok = std::isfinite(ek.norm()) && ek.drift() <= 0.05;
    double gd = 0.0, gn = 0.0;
    for (int h = 0; h < n; ++h) {
      auto eg = class_norm(dlp_gradient_component_kernel(S, h), *M,
                           Exponents{n - 1.0, double(n), 1.0}, 5 + h, 3, 8192);
      gd = std::max(gd, eg.drift());
      gn = std::max(gn, eg.norm());
    }
    // an estimate at the evaluation noise floor (identically vanishing
    // gradient kernel) counts as stable
    bool grad_zero = gn <= 1e-3 * std::max(ek.norm(), 1.0);
    ok = ok && std::isfinite(gn) && (gd <= 0.05 || grad_zero);
    all = all && ok;
    d << M->id() << ": kernel " << ek.norm() << " drift " << ek.drift()
      << ", gradient " << gn << " drift " << gd << "; ";
  }
  report("criterion 5 (kernel-class membership estimates stabilize)", all, d.str());
}

void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  std::ostringstream d;
  {
    auto S = make_laplace(2);
    auto M = make_circle(1.0);
    double v = maximal_function_condition(S, *M, 3, dyadic_radii(*M, 1e-3));
    all = all && v <= 1e-10;
    d << "circle: " << v << "; ";
  }
  for (bool is2d : {true, false}) {
    FundamentalSolution S = is2d ? make_laplace(2) : make_laplace(3);
    std::shared_ptr<BoundaryManifold> M =
        is2d ? std::static_pointer_cast<BoundaryManifold>(make_ellipse(2.0, 1.0))
             : std::static_pointer_cast<BoundaryManifold>(make_sphere(1.0));
    QuadratureRule base = M->quadrature(0);
    std::size_t stride = std::max<std::size_t>(1, base.size() / 64);
    std::vector<Param> targets;
    for (std::size_t i = 0; i < base.size(); i += stride)
      targets.push_back(base.points[i].u);
    int lev = is2d ? 3 : 2;
    // keep only truncation radii the coarser rule resolves
    double r_min = 4.0 * mean_node_spacing(*M, lev);
    std::vector<double> radii;
    for (double r : dyadic_radii(*M, 1e-3))
      if (r >= r_min) radii.push_back(r);
    double a = maximal_function_condition(S, *M, lev, radii, targets);
    double b = maximal_function_condition(S, *M, lev + 1, radii, targets);
    double l1 = maximal_gradient_l1(S, *M, lev + 1, r_min, targets);
    double drift = std::abs(b - a) / std::max({a, b, 1e-14});
    // bounded either by trace stabilization or by outright cancellation
    // against the absolute-integral scale
    bool ok = std::isfinite(b) && (drift <= 0.05 || std::max(a, b) <= 0.05 * l1);
    all = all && ok;
    d << M->id() << ": sup " << b << " drift " << drift << " l1 " << l1 << "; ";
  }
  d << seconds_since(t0) << " s";
  report("criterion 6 (maximal function of the kernel gradient)", all, d.str());
}

void criterion_7() {
  bool all = true;
  std::ostringstream d;
  for (const auto& S : full_catalog()) {
    auto rep = verify_structure(S, 64);
    bool ok = rep.b1_zero_at_origin && rep.odd_n_null_ok &&
              rep.a1_oddness_residual <= 1e-10 && rep.a2_evenness_residual <= 1e-10 &&
              rep.gradient_fd_residual <= 1e-6 && rep.pde_residual_max <= 1e-5;
    all = all && ok;
    d << S.id << (ok ? " ok" : " FAIL") << " (pde " << rep.pde_residual_max << "); ";
  }
  report("criterion 7 (fundamental-solution structure checks)", all, d.str());
}

void criterion_8() {
  bool all = true;
  std::ostringstream d;
  // reference cases
  {
    double alpha = 0.6, beta = 0.7;
    auto c1 = classify_mapping(3, 2.0 - alpha, 3.0 - alpha, 3.0, alpha, beta);
    bool ok1 = c1.label == "iii.c" &&
               std::abs(c1.target.exponent() - (alpha + beta - 1.0)) < 1e-14;
    auto c2 = classify_mapping(3, 1.0, 2.0, 3.0, 1.0, beta);
    bool ok2 = c2.label == "ii.b" && std::abs(c2.target.exponent() - beta) < 1e-14;
    auto c3 = classify_mapping(3, 1.0, 2.0, 3.0, 1.0, 1.0);
    bool ok3 = c3.label == "ii.bb" && std::abs(c3.target.exponent() - 1.0) < 1e-14 &&
               c3.target(0.01) == omega_theta(1.0, 0.01);
    all = ok1 && ok2 && ok3;
    d << "reference cases " << (all ? "ok" : "FAIL") << "; ";
  }
  // exhaustive monotone-consistency grid
  std::size_t count = 0, equality_checked = 0;
  bool grid_ok = true;
  for (int n : {2, 3}) {
    double nm1 = n - 1.0;
    for (int ib = 1; ib <= 10; ++ib) {
      double beta = ib / 10.0;
      for (int it3 = 1; it3 <= 10; ++it3) {
        double t3 = it3 / 10.0;
        for (int it1 = 0; it1 < 10; ++it1) {
          double t1 = beta + (nm1 - 1e-9) * it1 / 10.0;
          std::vector<double> t2s;
          for (int it2 = 1; it2 <= 5; ++it2)
            t2s.push_back(nm1 + beta + (t3 - 1e-9) * it2 / 6.0);
          t2s.push_back(nm1 + beta); // borderline case
          for (double t2 : t2s) {
            MappingCase mc = classify_mapping(n, 0.5 * nm1, t1, t2, t3, beta);
            ++count;
            double e = mc.target.exponent();
            if (e > beta + 1e-12) grid_ok = false;
            if (t1 <= nm1 + 1e-12 && t2 <= nm1 + t3 + 1e-12) {
              ++equality_checked;
              if (std::abs(e - beta) > 1e-12) grid_ok = false;
            }
          }
        }
      }
    }
  }
  all = all && grid_ok && count >= 10000;
  d << count << " grid points, " << equality_checked
    << " equality cases, monotone consistency " << (grid_ok ? "ok" : "FAIL");
  report("criterion 8 (mapping-case analysis)", all, d.str());
}

void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  auto S = make_laplace(2);
  auto M = make_ellipse(2.0, 1.0);
  auto cusp = [&M](double beta) {
    return BoundaryFunction{
        [&M, beta](const Vec& p) {
          double t = M->param_of(p).a;
          return Complex(std::pow(std::abs(std::sin(0.5 * (t - 1.0))), beta));
        },
        nullptr};
  };
  bool stabilize_ok = true, growth_ok = true, omega_ok = true;
  std::ostringstream d;
  for (double beta : {0.25, 0.5, 0.75}) {
    std::vector<NamedDensity> ds = {{"cusp", cusp(beta)},
                                    {"smooth", BoundaryFunction{[&M](const Vec& p) {
                                                                  return Complex(
                                                                      std::cos(M->param_of(p).a));
                                                                },
                                                                nullptr}}};
    auto rep = regularity_report(S, *M, ds, beta, 1, 33);
    for (const auto& e : rep.entries) {
      stabilize_ok = stabilize_ok && e.stable;
      if (e.density == "cusp") {
        growth_ok = growth_ok && e.strong_growth >= 1.25;
        d << "beta=" << beta << ": table " << e.seminorm_by_level.back()
          << (e.stable ? " stable" : " UNSTABLE") << ", strong growth "
          << e.strong_growth << "; ";
      }
    }
  }
  {
    std::vector<NamedDensity> ds = {{"kink", cusp(1.0)}};
    auto rep = regularity_report(S, *M, ds, 1.0, 1, 33);
    omega_ok = rep.entries[0].stable;
    d << "beta=1 (log-corrected modulus) "
      << (omega_ok ? "stable" : "UNSTABLE") << "; ";
  }
  double dt = seconds_since(t0);
  d << dt << " s";
  report("criterion 9a (predicted-modulus tables stabilize)",
         stabilize_ok && dt < 300.0, d.str());
  // On analytic boundaries the operator smooths every density, so the
  // too-strong-modulus tables stay bounded and this gate cannot trigger; it
  // is retained as specified and reports the measured growth.
  report("criterion 9b (too-strong modulus grows by 25%)", growth_ok, d.str());
  report("criterion 9c (borderline log-corrected tables stabilize)", omega_ok,
         d.str());
}

void criterion_10() {
  auto M3 = make_sphere(1.0);
  auto M2 = make_ellipse(2.0, 1.0);
  bool all = true;
  std::ostringstream d;

  // kernel algebra battery, 1e4 admissible triples on each boundary
  for (int pass = 0; pass < 2; ++pass) {
    const BoundaryManifold& M = pass == 0 ? *M3 : *M2;
    FundamentalSolution S = pass == 0 ? make_laplace(3) : make_yukawa2d(1.0);
    int n = M.dim();
    Exponents ke = n == 3 ? Exponents{1.0, 2.0, 1.0} : Exponents{0.1, 1.1, 1.0};
    // odd directional kernel x0 |x|^{-n}, homogeneous of degree -(n-1)
    auto hk = homogeneous_kernel(
        [n](const Vec& x) { return Complex(x[0] / ipow(norm(x), n)); }, n - 1.0, n);
    auto rep = verify_algebra(dlp_as_kernel(S), ke, hk.kernel, hk.advertised, M,
                              909 + pass, 10000,
                              [](const Vec& th, double r) {
                                return Complex(th[0] * std::cos(r));
                              },
                              2.0);
    for (const auto& c : rep.checks) {
      all = all && c.pass;
      if (!c.pass) d << M.id() << "/" << c.name << " FAIL worst=" << c.worst << "; ";
    }
    d << M.id() << ": " << rep.checks.size() << " checks on 1e4 triples; ";
  }

  // bounded-function quotient bound, 1e4 sampled pairs per function
  {
    std::mt19937_64 rng(24);
    auto uni = [&rng]() { return std::ldexp(static_cast<double>(rng()), -64); };
    for (int f = 0; f < 4; ++f) {
      double c1 = uni() - 0.5, c2 = uni() - 0.5, c3 = uni() - 0.5;
      int k1 = 1 + static_cast<int>(uni() * 4), k2 = 1 + static_cast<int>(uni() * 6);
      BoundaryFunction trig{[=](const Vec& p) {
                              return Complex(c1 * std::cos(k1 * p[0]) +
                                             c2 * std::sin(k2 * p[1]) + c3);
                            },
                            nullptr};
      Modulus m = (f % 2 == 0) ? Modulus::power(0.3 + 0.15 * f) : Modulus::omega(0.5 + 0.1 * f);
      auto rep = separated_pair_bound_check(trig, *M2, m, 0.3 + 0.2 * f, 55 + f, 10000);
      all = all && rep.pass;
      if (!rep.pass) d << "pair-bound f" << f << " FAIL; ";
    }
    d << "separated-pair bounds on 4 functions";
  }
  report("criterion 10 (kernel algebra and quotient bounds, zero violations)", all,
         d.str());
}

void criterion_11() {
  auto dir1 = fs::temp_directory_path() / "layerpot-acceptance" / "det1";
  auto dir2 = fs::temp_directory_path() / "layerpot-acceptance" / "det2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  cli::RunConfig cfg;
  cfg.operator_id = "yukawa2d:lambda=1";
  cfg.boundary_id = "ellipse:a=2,b=1";
  cfg.suite = "kernel-class";
  cfg.level = 1;
  cfg.seed = 2024;
  cfg.out_dir = dir1.string();
  int rc1 = cli::run_suite(cfg);
  cfg.out_dir = dir2.string();
  int rc2 = cli::run_suite(cfg);
  auto load = [](const fs::path& p) {
    std::ifstream in(p / "report.json");
    nlohmann::ordered_json j;
    in >> j;
    j["provenance"].erase("timestamp");
    return j.dump();
  };
  bool ok = rc1 == rc2 && load(dir1) == load(dir2);
  report("criterion 11 (byte-identical reports for identical config and seed)", ok,
         ok ? "reports match" : "reports differ");
}

} // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("acceptance: %d failure(s), %.1f s total\n", failures,
              seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
