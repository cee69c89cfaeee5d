#include <CLI11.hpp>
#include <iostream>

#include "layerpot/errors.hpp"
#include "layerpot/fundsol.hpp"
#include "layerpot/geometry.hpp"
#include "layerpot/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"double layer potential verification suites"};

  std::string op, boundary, suite, out, config, plot_report, plot_curve;
  int level = -1;
  long long seed = -1;
  double stability = -1.0;
  bool list = false;

  app.add_option("--operator", op, "operator id, e.g. laplace or yukawa2d:lambda=1");
  app.add_option("--boundary", boundary, "boundary id, e.g. circle:R=1");
  app.add_option("--suite", suite,
                 "structure|kernel-class|dlp|maximal|regularity|all");
  app.add_option("--level", level, "refinement level in [0,5]");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--config", config, "key=value config file; flags override it");
  app.add_option("--stability-pct", stability, "trace stabilization threshold");
  app.add_flag("--list", list, "print the operator and boundary catalogs");
  app.add_option("--plot-report", plot_report, "report.json to read a curve from");
  app.add_option("--plot-curve", plot_curve, "curve selector to emit as CSV");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    std::cout << "operators:\n";
    for (const auto& id : layerpot::catalog_ids()) std::cout << "  " << id << "\n";
    std::cout << "boundaries:\n";
    for (const auto& id : layerpot::boundary_ids()) std::cout << "  " << id << "\n";
    return 0;
  }

  try {
    if (!plot_report.empty() || !plot_curve.empty()) {
      if (plot_report.empty() || plot_curve.empty())
        throw layerpot::BadConfig("--plot-report and --plot-curve go together");
      layerpot::cli::emit_plot_data(plot_report, plot_curve, std::cout);
      return 0;
    }

    layerpot::cli::RunConfig cfg;
    if (!config.empty()) cfg = layerpot::cli::parse_config_file(config);
    if (!op.empty()) cfg.operator_id = op;
    if (!boundary.empty()) cfg.boundary_id = boundary;
    if (!suite.empty()) cfg.suite = suite;
    if (level >= 0) cfg.level = level;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    if (!out.empty()) cfg.out_dir = out;
    if (stability > 0.0) cfg.stability_pct = stability;

    return layerpot::cli::run_suite(cfg);
  } catch (const layerpot::QuadratureNotConverged& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const layerpot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
