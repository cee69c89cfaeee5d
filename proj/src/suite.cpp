#include "layerpot/suite.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "layerpot/errors.hpp"
#include "layerpot/holder.hpp"

namespace layerpot::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SuiteState {
  json checks = json::array();
  json curves = json::object();
  bool any_fail = false;

  void add_check(const std::string& name, bool pass, double value, double threshold,
                 json details = json::object()) {
    json c;
    c["name"] = name;
    c["pass"] = pass;
    c["value"] = value;
    c["threshold"] = threshold;
    if (!details.empty()) c["details"] = std::move(details);
    checks.push_back(std::move(c));
    if (!pass) any_fail = true;
  }

  void add_curve(const std::string& selector,
                 const std::vector<std::pair<double, double>>& rows) {
    json arr = json::array();
    for (const auto& [x, y] : rows) arr.push_back(json::array({x, y}));
    curves[selector] = std::move(arr);
  }
};

std::vector<std::pair<double, double>> table_rows(const HolderEstimate& est) {
  std::vector<std::pair<double, double>> rows;
  for (const auto& b : est.table) {
    if (b.count == 0) continue;
    rows.emplace_back(std::sqrt(b.lo * b.hi), b.max_quotient);
  }
  return rows;
}

double drift(double a, double b) {
  return std::abs(b - a) / std::max({std::abs(a), std::abs(b), 1e-14});
}

// ------------------------------------------------------------- suites ----

void suite_structure(SuiteState& st, const FundamentalSolution& S) {
  auto rep = verify_structure(S, 64);
  st.add_check("structure/b1-vanishes-at-origin", rep.b1_zero_at_origin, 0.0, 0.0);
  st.add_check("structure/odd-dimension-null-terms", rep.odd_n_null_ok, 0.0, 0.0);
  st.add_check("structure/first-correction-odd", rep.a1_oddness_residual <= 1e-10,
               rep.a1_oddness_residual, 1e-10);
  st.add_check("structure/gradient-correction-even", rep.a2_evenness_residual <= 1e-10,
               rep.a2_evenness_residual, 1e-10);
  st.add_check("structure/gradient-matches-differences",
               rep.gradient_fd_residual <= 1e-6, rep.gradient_fd_residual, 1e-6);
  st.add_check("structure/operator-residual", rep.pde_residual_max <= 1e-5,
               rep.pde_residual_max, 1e-5);
}

void suite_dlp(SuiteState& st, const FundamentalSolution& S, const BoundaryManifold& M,
               const RunConfig& cfg) {
  // two-route identity
  auto pairs = sample_pairs(M, 2048u << cfg.level, 1e-6, cfg.seed);
  double worst = 0.0;
  for (const auto& p : pairs) {
    Complex a = dlp_kernel(S, p.x, p.y);
    Complex b = dlp_kernel_reference(S, p.x, p.y);
    Vec a2nu = mat_vec(S.coeffs.a2, p.y.nu);
    Vec z = p.x.x - p.y.x;
    double scale = norm(gradient(S, z)) * norm(a2nu) +
                   std::abs(dot(S.coeffs.a1, p.y.nu)) * std::abs(value(S, z)) +
                   std::abs(a);
    worst = std::max(worst, std::abs(a - b) / std::max(scale, 1e-12));
  }
  st.add_check("dlp/two-route-kernel-identity", worst <= 1e-12, worst, 1e-12,
               {{"pairs", pairs.size()}});

  // tangential gradient against differencing along the boundary
  double diam = M.diameter();
  double fd_worst = 0.0;
  std::size_t checked = 0;
  for (const auto& p : pairs) {
    if (checked >= 256) break;
    if (norm(p.x.x - p.y.x) < 0.1 * diam) continue;
    ++checked;
    CVec g = dlp_kernel_tangential_gradient(S, p.x, p.y);
    auto frame = tangent_frame(M, p.x.u);
    double h = 1e-5;
    CVec fd = CVec::zero(M.dim());
    for (const Vec& t : frame) {
      BoundaryPoint xp = M.at(M.param_of(M.radial_project(p.x.x + h * t)));
      BoundaryPoint xm = M.at(M.param_of(M.radial_project(p.x.x - h * t)));
      Complex dk =
          (dlp_kernel(S, xp, p.y) - dlp_kernel(S, xm, p.y)) / norm(xp.x - xm.x);
      for (int c = 0; c < M.dim(); ++c) fd[c] += dk * t[c];
    }
    double kscale = std::abs(dlp_kernel(S, p.x, p.y)) / diam;
    double scale = std::max({norm(g), norm(fd), kscale, 1e-10});
    fd_worst = std::max(fd_worst, norm(fd - g) / scale);
  }
  st.add_check("dlp/tangential-gradient-vs-differences", fd_worst <= 1e-6, fd_worst,
               1e-6, {{"pairs", checked}});

  // unit-density potential at the rule nodes
  QuadratureRule rule = M.quadrature(std::min(cfg.level, M.dim() == 2 ? 5 : 2));
  std::size_t stride = std::max<std::size_t>(1, rule.size() / 32);
  std::vector<std::pair<double, double>> wcurve;
  std::ofstream csv(fs::path(cfg.out_dir) / "curves" / "dlp_w1.csv");
  csv << "node_index,u_param,re,im\n";
  double spread = 0.0;
  Complex first;
  bool have_first = false;
  for (std::size_t i = 0; i < rule.size(); i += stride) {
    WResult w = eval_W_one(S, M, rule.points[i].u, cfg.level);
    csv << i << "," << format17(rule.points[i].u.a) << "," << format17(w.value.real())
        << "," << format17(w.value.imag()) << "\n";
    wcurve.emplace_back(static_cast<double>(i), w.value.real());
    if (!have_first) {
      first = w.value;
      have_first = true;
    }
    spread = std::max(spread, std::abs(w.value - first));
  }
  st.add_curve("dlp/w1_nodes", wcurve);

  // without lower-order terms the unit-density potential is the jump
  // constant 1/2 on every boundary of the catalog
  bool principal_only = S.coeffs.a0 == Complex(0.0);
  for (int l = 0; l < M.dim(); ++l)
    if (S.coeffs.a1[l] != Complex(0.0)) principal_only = false;
  if (principal_only) {
    double tol = M.dim() == 2 ? 1e-10 : 1e-4;
    double worst_half = 0.0;
    for (const auto& [idx, re] : wcurve)
      worst_half = std::max(worst_half, std::abs(re - 0.5));
    st.add_check("dlp/unit-density-half", worst_half <= tol, worst_half, tol);
    st.add_check("dlp/unit-density-constant", spread <= tol, spread, tol);
  }

  // antisymmetry of the assembled tangential derivative of W[1]
  Param u0 = rule.points[rule.size() / 3].u;
  Complex d01 = w1_tangential_derivative(S, M, 0, 1, u0, cfg.level);
  Complex d10 = w1_tangential_derivative(S, M, 1, 0, u0, cfg.level);
  double anti = std::abs(d01 + d10) / std::max(1.0, std::abs(d01));
  st.add_check("dlp/w1-derivative-antisymmetry", anti <= 1e-8, anti, 1e-8);

  // singular-bound constants
  auto sb = singular_bound_report(S, M, M.dim() == 2 ? 1.0 : 0.5, cfg.seed,
                                  std::min(cfg.level, 3));
  bool sb_ok = std::isfinite(sb.b_alpha) && std::isfinite(sb.b_tilde) &&
               std::isfinite(sb.b_log);
  json sbd = {{"b_alpha", sb.b_alpha}, {"b_tilde", sb.b_tilde}};
  if (M.dim() == 2) {
    sbd["b_log"] = sb.b_log;
    sbd["c5o"] = sb.c5o;
    sb_ok = sb_ok && std::isfinite(sb.c5o) && sb.c5o_trace.size() == 2 &&
            std::abs(sb.c5o_trace[0] - sb.c5o_trace[1]) <=
                0.05 * std::max(sb.c5o, 1e-14);
  }
  st.add_check("dlp/singular-bound-constants", sb_ok, sb.b_alpha, 0.0, sbd);
}

void suite_kernel_class(SuiteState& st, const FundamentalSolution& S,
                        const BoundaryManifold& M, const RunConfig& cfg) {
  int n = M.dim();
  Exponents kernel_exps =
      n == 3 ? Exponents{1.0, 2.0, 1.0} : Exponents{0.1, 1.1, 1.0};
  Kernel K = dlp_as_kernel(S);
  auto est = class_norm(K, M, kernel_exps, cfg.seed, cfg.level, 8192);
  est.sharp_sup =
      sharp_norm(K, M, std::min(cfg.level, n == 2 ? 4 : 2), dyadic_radii(M, 1e-4));
  std::vector<std::pair<double, double>> trace;
  for (const auto& t : est.trace)
    trace.emplace_back(static_cast<double>(t.level), t.first_sup + t.second_sup);
  st.add_curve("kernel-class/kernel_trace", trace);
  st.add_check("kernel-class/kernel-estimate-finite", std::isfinite(est.norm()),
               est.norm(), 0.0, {{"sharp_sup", *est.sharp_sup}});
  st.add_check("kernel-class/kernel-estimate-stable",
               est.drift() <= cfg.stability_pct / 100.0, est.drift(),
               cfg.stability_pct / 100.0);

  double grad_norm = 0.0, grad_drift = 0.0;
  for (int h = 0; h < n; ++h) {
    auto ge = class_norm(dlp_gradient_component_kernel(S, h), M,
                         Exponents{n - 1.0, double(n), 1.0}, cfg.seed + h, cfg.level,
                         8192);
    grad_norm = std::max(grad_norm, ge.norm());
    grad_drift = std::max(grad_drift, ge.drift());
  }
  st.add_check("kernel-class/gradient-estimate-finite", std::isfinite(grad_norm),
               grad_norm, 0.0);
  bool grad_zero = grad_norm <= 1e-3 * std::max(est.norm(), 1.0);
  st.add_check("kernel-class/gradient-estimate-stable",
               grad_drift <= cfg.stability_pct / 100.0 || grad_zero, grad_drift,
               cfg.stability_pct / 100.0);

  auto hk = homogeneous_kernel(
      [n](const Vec& x) { return Complex(std::pow(norm(x), -(n - 1.0))); }, n - 1.0, n);
  auto alg = verify_algebra(K, kernel_exps, hk.kernel, hk.advertised, M, cfg.seed,
                            4096, [](const Vec& th, double) { return Complex(th[0]); },
                            1.0);
  for (const auto& c : alg.checks) {
    st.add_check("kernel-class/algebra/" + c.name, c.pass, c.worst, 1.0,
                 {{"configurations", c.n}, {"witness", c.witness}});
  }

  // bounded-function quotient bound for separated pairs
  BoundaryFunction trig{[](const Vec& p) {
                          return Complex(std::cos(3.0 * p[0]) - 0.5 * std::sin(p[1]));
                        },
                        nullptr};
  for (double a : {0.25 * M.diameter(), 0.5 * M.diameter()}) {
    auto rep = separated_pair_bound_check(trig, M, Modulus::power(0.5), a, cfg.seed);
    std::ostringstream name;
    name << "kernel-class/separated-pair-bound-a=" << a;
    st.add_check(name.str(), rep.pass, rep.observed, rep.bound);
  }
}

void suite_maximal(SuiteState& st, const FundamentalSolution& S,
                   const BoundaryManifold& M, const RunConfig& cfg) {
  QuadratureRule base = M.quadrature(0);
  std::size_t stride = std::max<std::size_t>(1, base.size() / 64);
  std::vector<Param> targets;
  for (std::size_t i = 0; i < base.size(); i += stride) targets.push_back(base.points[i].u);

  int lev = std::min(cfg.level, M.dim() == 2 ? 5 : 3);
  int coarse = std::max(0, lev - 1);
  // restrict to truncation radii the coarser rule resolves
  double r_min = 4.0 * mean_node_spacing(M, coarse);
  std::vector<double> radii;
  for (double r : dyadic_radii(M, 1e-3))
    if (r >= r_min) radii.push_back(r);
  if (radii.empty()) radii.push_back(M.diameter());

  auto curve = maximal_function_curve(S, M, lev, radii, targets);
  st.add_curve("maximal/truncated_integrals", curve);
  double sup = 0.0;
  for (const auto& [r, v] : curve) sup = std::max(sup, v);

  double prev = maximal_function_condition(S, M, coarse, radii, targets);
  bool is_laplace_circle = S.id == "laplace" && M.id().rfind("circle", 0) == 0;
  if (is_laplace_circle) {
    st.add_check("maximal/vanishes-on-circle", sup <= 1e-10, sup, 1e-10);
  } else {
    st.add_check("maximal/finite", std::isfinite(sup), sup, 0.0);
    double d = drift(prev, sup);
    double l1 = maximal_gradient_l1(S, M, lev, r_min, targets);
    bool ok = d <= cfg.stability_pct / 100.0 || sup <= 0.05 * l1;
    st.add_check("maximal/bounded", ok, sup, 0.05 * l1, {{"drift", d}});
  }
}

void suite_regularity(SuiteState& st, const FundamentalSolution& S,
                      const BoundaryManifold& M, const RunConfig& cfg) {
  if (M.dim() != 2) {
    st.add_check("regularity/requires-curve", true, 0.0, 0.0,
                 {{"note", "skipped on surfaces"}});
    return;
  }
  auto pick = [&M](double t0, double beta) {
    return BoundaryFunction{
        [&M, t0, beta](const Vec& p) {
          double t = M.param_of(p).a;
          return Complex(std::pow(std::abs(std::sin(0.5 * (t - t0))), beta));
        },
        nullptr};
  };
  for (double beta : {0.5, 1.0}) {
    std::vector<NamedDensity> densities;
    densities.push_back(
        {"smooth", BoundaryFunction{
                       [&M](const Vec& p) { return Complex(std::cos(M.param_of(p).a)); },
                       nullptr}});
    densities.push_back({"cusp", pick(1.0, beta)});
    auto rep = regularity_report(S, M, densities, beta, std::min(cfg.level, 2),
                                 cfg.seed);
    for (const auto& e : rep.entries) {
      std::ostringstream prefix;
      prefix << "regularity/beta=" << beta << "/" << e.density;
      st.add_check(prefix.str() + "/stable", e.stable,
                   e.seminorm_by_level.back(), 0.0,
                   {{"ratio", e.ratio}, {"modulus", rep.predicted_modulus}});
      // growth of the next-stronger power-modulus table; informational only
      st.add_check(prefix.str() + "/companion-growth", true, e.strong_growth, 0.0,
                   {{"note", "diagnostic, not gated"}});
      st.add_curve(prefix.str() + "/scale_table", table_rows(e.tables.back()));
    }
  }
}

} // namespace

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw BadConfig("config line " + std::to_string(lineno) + " is not key=value");
    apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "operator")
      cfg.operator_id = value;
    else if (key == "boundary")
      cfg.boundary_id = value;
    else if (key == "suite")
      cfg.suite = value;
    else if (key == "level")
      cfg.level = std::stoi(value);
    else if (key == "seed")
      cfg.seed = static_cast<unsigned>(std::stoul(value));
    else if (key == "out")
      cfg.out_dir = value;
    else if (key == "stability-pct")
      cfg.stability_pct = std::stod(value);
    else
      throw BadConfig("unknown config key: " + key);
  } catch (const BadConfig&) {
    throw;
  } catch (const std::exception&) {
    throw BadConfig("bad value for config key " + key + ": " + value);
  }
}

int run_suite(const RunConfig& cfg) {
  static const std::vector<std::string> suites = {
      "structure", "kernel-class", "dlp", "maximal", "regularity", "all"};
  if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end())
    throw BadConfig("unknown suite: " + cfg.suite);
  if (cfg.level < 0 || cfg.level > 5)
    throw BadConfig("level must lie in [0,5]");
  if (!(cfg.stability_pct > 0.0))
    throw BadConfig("stability-pct must be positive");

  std::shared_ptr<BoundaryManifold> M;
  try {
    M = make_boundary(cfg.boundary_id);
  } catch (const Error& e) {
    throw BadConfig(std::string("boundary: ") + e.what());
  }
  FundamentalSolution S;
  try {
    S = catalog_construct(cfg.operator_id, M->dim());
  } catch (const Error& e) {
    throw BadConfig(std::string("operator: ") + e.what());
  }

  fs::create_directories(fs::path(cfg.out_dir) / "curves");

  SuiteState st;
  auto want = [&cfg](const char* s) { return cfg.suite == "all" || cfg.suite == s; };
  int rc = 0;
  try {
    if (want("structure")) suite_structure(st, S);
    if (want("dlp")) suite_dlp(st, S, *M, cfg);
    if (want("kernel-class")) suite_kernel_class(st, S, *M, cfg);
    if (want("maximal")) suite_maximal(st, S, *M, cfg);
    if (want("regularity")) suite_regularity(st, S, *M, cfg);
  } catch (const QuadratureNotConverged& e) {
    st.add_check("convergence-failure", false, 0.0, 0.0, {{"error", e.what()}});
    rc = 3;
  }

  json report;
  report["provenance"] = {
      {"artifact", "layerpot"},
      {"version", ARTIFACT_VERSION},
      {"operator", cfg.operator_id},
      {"boundary", cfg.boundary_id},
      {"suite", cfg.suite},
      {"level", cfg.level},
      {"seed", cfg.seed},
      {"stability_pct", cfg.stability_pct},
      {"timestamp",
       std::chrono::duration_cast<std::chrono::seconds>(
           std::chrono::system_clock::now().time_since_epoch())
           .count()},
  };
  report["checks"] = st.checks;
  report["curves"] = st.curves;

  std::ofstream rj(fs::path(cfg.out_dir) / "report.json");
  rj << report.dump(2) << "\n";

  std::ofstream summary(fs::path(cfg.out_dir) / "summary.txt");
  for (const auto& c : st.checks) {
    summary << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
            << c["name"].get<std::string>() << " value=" << format17(c["value"])
            << " threshold=" << format17(c["threshold"]) << "\n";
  }

  for (auto it = st.curves.begin(); it != st.curves.end(); ++it) {
    std::string fname = it.key();
    for (auto& ch : fname)
      if (ch == '/') ch = '_';
    std::ofstream cf(fs::path(cfg.out_dir) / "curves" / (fname + ".csv"));
    cf << (it.key().find("maximal") != std::string::npos ? "r,integral\n"
                                                         : "separation,quotient\n");
    for (const auto& row : it.value())
      cf << format17(row[0].get<double>()) << "," << format17(row[1].get<double>())
         << "\n";
  }

  if (rc == 0 && st.any_fail) rc = 2;
  return rc;
}

void emit_plot_data(const std::string& report_path, const std::string& selector,
                    std::ostream& out) {
  std::ifstream in(report_path);
  if (!in) throw MalformedReport("cannot open report: " + report_path);
  json report;
  try {
    in >> report;
  } catch (const std::exception& e) {
    throw MalformedReport(std::string("cannot parse report: ") + e.what());
  }
  if (!report.contains("curves") || !report["curves"].is_object())
    throw MalformedReport("report has no curves section");
  const auto& curves = report["curves"];
  if (!curves.contains(selector)) throw MissingCurve("no curve named " + selector);
  out << (selector.find("maximal") != std::string::npos ? "r,integral\n"
                                                        : "separation,quotient\n");
  for (const auto& row : curves[selector]) {
    out << format17(row[0].get<double>()) << "," << format17(row[1].get<double>())
        << "\n";
  }
}

} // namespace layerpot::cli
