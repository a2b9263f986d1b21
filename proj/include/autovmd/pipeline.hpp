#pragma once

#include "autovmd/baseline.hpp"
#include "autovmd/metrics.hpp"
#include "autovmd/modes.hpp"
#include "autovmd/spectrum.hpp"
#include "autovmd/vmd.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace autovmd {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int record_schema = 1;

struct SpectrumConfig
{
  std::size_t intervals = 200; // N; the grid has N + 1 nodes
  bool extend = true;
  double pad_fraction = 0.1;
  Taper taper = Taper::RaisedCosine;
};

//! VMD settings that do not depend on the detected modes.
struct VmdOptions
{
  double alpha_penalty = 2000.0;
  double tau = 0.0;
  double tol = 1e-7;
  std::size_t max_iter = 1000;
  bool dc_lock = true;
};

struct OutputConfig
{
  std::filesystem::path dir = "out";
  bool emit_plots = false;
  bool emit_traces = true;
};

struct PipelineConfig
{
  BaselineConfig baseline;
  SpectrumConfig spectrum;
  ModeConfig modes;
  VmdOptions vmd;
  OutputConfig output;
};

//! Where the signal comes from. Exactly one of `signal` and `csv` is set.
struct InputSpec
{
  std::optional<std::string> signal;
  std::optional<std::filesystem::path> csv;
  std::size_t samples = 200; // generator sample count
  std::size_t take = 0;      // 0: all samples
  std::size_t downsample = 1;
};

//! take is applied before downsample.
RawSignal load_input(const InputSpec& input);

nlohmann::json to_json(const PipelineConfig& config);
//! Missing keys keep their defaults; unknown keys are rejected with BadConfig.
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const InputSpec& input);
InputSpec input_from_json(const nlohmann::json& j);

struct Analysis
{
  RawSignal signal;
  Spectrum spectrum; // extended if configured
  BaselineResult baseline;
  ModeSet modes;
};

Spectrum prepare_spectrum(const RawSignal& signal, const SpectrumConfig& config);
Analysis analyze(const RawSignal& signal, const PipelineConfig& config);

struct Decomposition
{
  Analysis analysis;
  VmdConfig vmd_config;
  VmdResult vmd;
  EvalReport eval;
};

//! VMD seeded with the detected modes. A signal without modes gets a single
//! DC-locked mode.
VmdConfig seeded_vmd_config(const ModeSet& modes, const VmdOptions& options);
Decomposition decompose_signal(const RawSignal& signal, const PipelineConfig& config);

nlohmann::json to_json(const Spectrum& spectrum);
nlohmann::json to_json(const ModeSet& modes);
nlohmann::json to_json(const BaselineResult& result, bool traces);
nlohmann::json to_json(const VmdResult& result);
nlohmann::json to_json(const EvalReport& report);

nlohmann::json run_record(const std::string& command, const InputSpec& input,
                          const PipelineConfig& config, const Analysis& analysis,
                          const Decomposition* decomposition = nullptr);

//! t, u_1 .. u_K, residual
void write_modes_csv(const std::filesystem::path& path, const RawSignal& signal,
                     const VmdResult& result);

// Reference data for the benchmark experiments.
struct ExperimentReference
{
  SignalName name;
  std::size_t mode_count;
  std::vector<double> centers;       // reference center frequencies, cycles/sample
  double center_tol;
  std::vector<double> tones;         // analytic pure-tone frequencies, cycles/sample
  std::size_t reference_iterations;
};

const std::vector<ExperimentReference>& experiment_references();

} // namespace autovmd
