#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tnorder/oscillator.hpp"
#include "tnorder/quadrature.hpp"
#include "tnorder/schedule.hpp"
#include "tnorder/tn.hpp"

namespace tnorder::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNonConvergence = 3 };

struct RunConfig {
  Units units;
  double t_min;
  double t_max;
  double dt;
  Evaluation method = Evaluation::semianalytic;
  double tolerance = 1e-7;
  QuadratureControls controls;
  /// Empty means the half-frequency switch built from units.omega0.
  std::string schedule_path;
  std::string output;
  std::string svg;
  unsigned threads = 0;  // 0: hardware concurrency

  RunConfig();
  /// Throws ConfigError on t_min >= t_max, dt <= 0, tolerance <= 0 or bad units.
  void validate() const;
  FrequencySchedule schedule() const;
  /// Quadrature controls with the configured tolerance applied.
  QuadratureControls quadrature() const;
  std::vector<double> grid() const;
};

struct Figure1Row {
  double t;
  double tn_exact;
  double tn_kk;
  double p2;
};

/// Equal-time TN curves and momentum variance on the configured grid.
/// Points within 0.05 of a schedule breakpoint use the quadrature path.
std::vector<Figure1Row> figure1_rows(const RunConfig& config);
void write_csv(std::ostream& out, const std::vector<Figure1Row>& rows);
void write_svg(std::ostream& out, const std::vector<Figure1Row>& rows, const RunConfig& config);

int cmd_figure1(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_causality_report(const RunConfig& config, std::ostream& out);
int cmd_selftest(const RunConfig& config, std::ostream& out);

/// Parses arguments, runs the subcommand and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnorder::cli
