#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cahnlab/config.hpp"
#include "cahnlab/convergence.hpp"
#include "cahnlab/dynamics.hpp"
#include "cahnlab/mollifier.hpp"

namespace cahnlab {

/// %.17g rendering used by every output file.
std::string format_real(double v);

void write_text(const std::filesystem::path& path, const std::string& text);

/// time, mass, interaction, potential, total, dual_rate, dissipation,
/// dissipation_hminus1, overshoot
std::string run_report_csv(const RunReport& report);
/// eps, err_L2H1, err_CdualH1, energy_gap, runtime_seconds
std::string sweep_csv(const SweepReport& report);
/// fitted rates, validity, diagnostics and the resolved plan.
std::string sweep_summary_json(const SweepReport& report, const RunConfig& cfg);
/// eps, field, err_L2, err_dual, energy_rel_err
std::string consistency_csv(const ConsistencyReport& report);
std::string consistency_summary_json(const ConsistencyReport& report, const RunConfig& cfg);
/// n, sample, ratio
std::string poincare_csv(const std::vector<PoincareResult>& results);
std::string poincare_summary_json(const std::vector<PoincareResult>& results, const RunConfig& cfg);
/// |z|, sample for every nonzero kernel sample, sorted by |z|.
std::string kernel_dump_csv(const ScaledKernel& K);

struct Checkpoint {
  int dim = 1;
  int n = 0;
  double side_length = 1.0;
  double time = 0.0;
  std::string scheme;
  std::optional<double> eps;
  std::string potential;  ///< potential kind name
  double a = 1.0, A1 = 1.0, A2 = 1.0, theta0 = 0.0, theta = 0.0;
  std::vector<double> values;
};

/// Text header of key=value lines terminated by `end_header`, then the cell
/// values as little-endian IEEE 754 doubles.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace cahnlab
