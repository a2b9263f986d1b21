#pragma once

#include "autovmd/pipeline.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace autovmd {

struct ExperimentRow
{
  std::string experiment;
  std::size_t mode_count = 0;
  std::size_t expected_count = 0;
  std::vector<double> centers;
  std::optional<double> max_center_diff; // vs the reference centers, if counts agree
  bool tones_ok = true;                  // every pure tone has a center within 2 bins
  std::size_t iterations = 0;
  std::size_t reference_iterations = 0;
  bool converged = false;
  double baseline_seconds = 0.0;
  double total_seconds = 0.0;
  EvalReport eval;
  std::vector<std::string> failures;
};

//! Decomposes one benchmark experiment and checks it against its reference.
ExperimentRow run_experiment(const ExperimentReference& ref, const PipelineConfig& config,
                             std::size_t sample_count = 200);

struct ExtensionTrial
{
  double feasibility_gap = 0.0; // on the original grid
  double final_residual = 0.0;
  std::size_t iterations = 0;
};

struct ExtensionComparison
{
  ExtensionTrial extended;
  ExtensionTrial plain;
  bool improved() const
  {
    return extended.feasibility_gap < plain.feasibility_gap &&
           extended.final_residual < plain.final_residual;
  }
};

//! Baseline of the band-stop signal with and without spectrum extension at
//! an equal iteration budget.
ExtensionComparison compare_extension(const PipelineConfig& config, std::size_t budget = 1500,
                                      std::size_t sample_count = 200);

//! |a - b| <= 2 grid bins for every tone, with bins of 0.5 / N cycles/sample.
bool tones_matched(const std::vector<double>& centers, const std::vector<double>& tones,
                   std::size_t intervals);

nlohmann::json to_json(const ExperimentRow& row);
std::string bench_csv_header();
std::string bench_csv_row(const ExperimentRow& row);

} // namespace autovmd
