#include "autovmd/bench.hpp"

#include "autovmd/error.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace autovmd {

bool tones_matched(const std::vector<double>& centers, const std::vector<double>& tones,
                   std::size_t intervals)
{
  const double bin = 0.5 / static_cast<double>(intervals);
  for (double t : tones) {
    bool hit = false;
    for (double c : centers)
      hit = hit || std::abs(c - t) <= 2 * bin + 1e-12;
    if (!hit)
      return false;
  }
  return true;
}

ExperimentRow run_experiment(const ExperimentReference& ref, const PipelineConfig& config,
                             std::size_t sample_count)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto signal = gen_signal(ref.name, sample_count);
  const auto d = decompose_signal(signal, config);

  ExperimentRow row;
  row.experiment = std::string(to_string(ref.name));
  row.mode_count = d.analysis.modes.count();
  row.expected_count = ref.mode_count;
  row.centers = d.analysis.modes.centers();
  row.iterations = d.analysis.baseline.iterations;
  row.reference_iterations = ref.reference_iterations;
  row.converged = d.analysis.baseline.converged;
  row.baseline_seconds = d.analysis.baseline.wall_seconds;
  row.eval = d.eval;
  row.tones_ok = tones_matched(row.centers, ref.tones, config.spectrum.intervals);

  if (row.mode_count != ref.mode_count)
    row.failures.push_back("count " + std::to_string(row.mode_count) + " != " + std::to_string(ref.mode_count));
  else {
    row.max_center_diff = max_center_diff(row.centers, ref.centers);
    row.eval.max_center_diff = row.max_center_diff;
    if (*row.max_center_diff > ref.center_tol)
      row.failures.push_back("center diff above tolerance");
  }
  if (!row.tones_ok)
    row.failures.push_back("tone not matched");
  if (!row.converged)
    row.failures.push_back("baseline did not converge");
  else if (row.iterations > 4 * ref.reference_iterations)
    row.failures.push_back("iterations above 4x reference");
  row.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (row.baseline_seconds > 10.0)
    row.failures.push_back("baseline slower than 10 s");
  return row;
}

namespace {

ExtensionTrial trial(const RawSignal& signal, PipelineConfig config, bool extend, std::size_t budget)
{
  config.spectrum.extend = extend;
  config.baseline.max_iter = budget;
  const auto spec = prepare_spectrum(signal, config.spectrum);
  const auto st = build_stencils(spec.grid_count(), spec.grid_spacing);
  const auto res = find_baseline(spec.values, st, config.baseline);
  std::vector<double> g = res.g_star, f = spec.values;
  if (spec.extension) {
    g = restrict_to_original(g, *spec.extension);
    f = restrict_to_original(f, *spec.extension);
  }
  return {feasibility_gap(g, f), res.residual_trace.empty() ? 0.0 : res.residual_trace.back(),
          res.iterations};
}

} // namespace

ExtensionComparison compare_extension(const PipelineConfig& config, std::size_t budget,
                                      std::size_t sample_count)
{
  const auto signal = gen_signal(SignalName::BandStop, sample_count);
  return {trial(signal, config, true, budget), trial(signal, config, false, budget)};
}

nlohmann::json to_json(const ExperimentRow& r)
{
  nlohmann::json j{{"experiment", r.experiment},
                   {"K", r.mode_count},
                   {"expected_K", r.expected_count},
                   {"centers", r.centers},
                   {"tones_ok", r.tones_ok},
                   {"iterations", r.iterations},
                   {"reference_iterations", r.reference_iterations},
                   {"converged", r.converged},
                   {"baseline_seconds", r.baseline_seconds},
                   {"total_seconds", r.total_seconds},
                   {"cc", r.eval.cc},
                   {"pr", r.eval.pr},
                   {"recon_rel_err", r.eval.recon_rel_err},
                   {"failures", r.failures}};
  j["max_center_diff"] = r.max_center_diff ? nlohmann::json(*r.max_center_diff) : nlohmann::json(nullptr);
  return j;
}

std::string bench_csv_header()
{
  return "experiment,K,expected_K,centers,max_center_diff,iterations,reference_iterations,converged,"
         "baseline_seconds,CC,PR,recon_rel_err,status";
}

std::string bench_csv_row(const ExperimentRow& r)
{
  std::ostringstream os;
  os.precision(6);
  os << r.experiment << ',' << r.mode_count << ',' << r.expected_count << ',';
  for (std::size_t i = 0; i < r.centers.size(); ++i)
    os << (i ? " " : "") << r.centers[i];
  os << ',';
  if (r.max_center_diff)
    os << *r.max_center_diff;
  os << ',' << r.iterations << ',' << r.reference_iterations << ',' << (r.converged ? "true" : "false") << ','
     << r.baseline_seconds << ',' << r.eval.cc << ',' << r.eval.pr << ',' << r.eval.recon_rel_err << ','
     << (r.failures.empty() ? "ok" : "fail");
  return os.str();
}

} // namespace autovmd
