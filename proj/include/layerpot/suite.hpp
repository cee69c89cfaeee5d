#ifndef LAYERPOT_SUITE_HPP
#define LAYERPOT_SUITE_HPP

#include <iosfwd>
#include <map>
#include <string>

namespace layerpot::cli {

inline constexpr const char* ARTIFACT_VERSION = "0.1.0";

struct RunConfig {
  std::string operator_id = "laplace";
  std::string boundary_id = "circle:R=1";
  std::string suite = "all"; // structure|kernel-class|dlp|maximal|regularity|all
  int level = 2;
  unsigned seed = 1;
  std::string out_dir = "out";
  double stability_pct = 5.0;
};

// key=value lines, '#' comments. Throws BadConfig.
RunConfig parse_config_file(const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

// Runs the selected suites and writes report.json, summary.txt and
// curves/*.csv into cfg.out_dir. Returns 0 when every gated check passes,
// 2 on a check failure, 3 on a quadrature convergence failure. Invalid
// configurations throw BadConfig.
int run_suite(const RunConfig& cfg);

// Writes the selected curve of a report as two-column CSV. Throws
// MissingCurve / MalformedReport.
void emit_plot_data(const std::string& report_path, const std::string& selector,
                    std::ostream& out);

} // namespace layerpot::cli

#endif
