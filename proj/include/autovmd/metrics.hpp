#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace autovmd {

//! Pearson correlation. Throws DegenerateInput if both inputs are constant;
//! returns 0 if exactly one is.
double correlation_coefficient(std::span<const double> x, std::span<const double> y);

//! sum r^2 / sum s^2. Throws ZeroSource.
double power_ratio(std::span<const double> residual, std::span<const double> source);

//! Largest |a_i - b_i| after sorting both lists. Throws LengthMismatch
//! (with both counts in the message) when the counts differ.
double max_center_diff(std::span<const double> ours, std::span<const double> reference);

//! ||source - recon|| / ||source||. Throws ZeroSource.
double relative_recon_error(std::span<const double> source, std::span<const double> recon);

struct EvalReport
{
  std::string experiment;
  std::size_t mode_count = 0;
  double cc = 0.0;
  double pr = 0.0;
  double recon_rel_err = 0.0;
  std::optional<double> max_center_diff;
};

//! Metrics of a reconstruction (sum of modes) against its source.
EvalReport evaluate(std::string experiment, std::span<const double> source,
                    const std::vector<std::vector<double>>& modes);

std::string csv_header(const EvalReport&);
//! experiment,K,CC,PR,recon_rel_err,max_center_diff
std::string csv_row(const EvalReport& report);

} // namespace autovmd
