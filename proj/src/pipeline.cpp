#include "autovmd/pipeline.hpp"

#include "autovmd/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace autovmd {

using nlohmann::json;

RawSignal load_input(const InputSpec& input)
{
  require(input.signal.has_value() != input.csv.has_value(), ErrorCode::BadConfig,
          "exactly one of --signal and --csv is required");
  require(input.downsample >= 1, ErrorCode::BadConfig, "downsample ratio must be at least 1");
  RawSignal s = input.signal ? gen_signal(*input.signal, input.samples) : load_csv(*input.csv);
  if (input.take > 0)
    s = take(s, input.take);
  if (input.downsample > 1)
    s = downsample(s, input.downsample);
  validate(s);
  return s;
}

namespace {

std::string_view to_string(SolverKind k) { return k == SolverKind::Banded ? "banded" : "dense"; }
std::string_view to_string(CenterEstimator c) { return c == CenterEstimator::Centroid ? "centroid" : "argmax"; }

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* section)
{
  require(j.is_object(), ErrorCode::BadConfig, std::string(section) + ": expected an object");
  std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    require(known.count(k) > 0, ErrorCode::BadConfig,
            std::string("unknown config key ") + section + "." + k);
}

template <class T>
void read(const json& j, const char* key, T& out)
{
  if (j.contains(key)) {
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception& e) {
      raise(ErrorCode::BadConfig, std::string("config key ") + key + ": " + e.what());
    }
  }
}

} // namespace

json to_json(const PipelineConfig& c)
{
  const auto& b = c.baseline;
  return {
    {"baseline",
     {{"alpha0", b.alpha0}, {"beta0", b.beta0}, {"theta", b.theta}, {"gamma", b.gamma},
      {"epsilon", b.epsilon}, {"max_iter", b.max_iter}, {"feasibility_factor", b.feasibility_factor},
      {"solver", to_string(b.solver)}}},
    {"spectrum",
     {{"grid", c.spectrum.intervals}, {"extend", c.spectrum.extend},
      {"pad_fraction", c.spectrum.pad_fraction}, {"taper", autovmd::to_string(c.spectrum.taper)}}},
    {"modes",
     {{"min_width", c.modes.min_width}, {"mass_floor", c.modes.mass_floor},
      {"peak_floor", c.modes.peak_floor}, {"bridge_gap", c.modes.bridge_gap},
      {"center", to_string(c.modes.center)}, {"kde_points", c.modes.kde_points},
      {"bandwidth", c.modes.bandwidth}}},
    {"vmd",
     {{"alpha_penalty", c.vmd.alpha_penalty}, {"tau", c.vmd.tau}, {"tol", c.vmd.tol},
      {"max_iter", c.vmd.max_iter}, {"dc_lock", c.vmd.dc_lock}}},
    {"output",
     {{"dir", c.output.dir.string()}, {"emit_plots", c.output.emit_plots},
      {"emit_traces", c.output.emit_traces}}},
  };
}

PipelineConfig config_from_json(const json& j, PipelineConfig c)
{
  reject_unknown(j, {"baseline", "spectrum", "modes", "vmd", "output"}, "config");
  if (j.contains("baseline")) {
    const auto& b = j["baseline"];
    reject_unknown(b, {"alpha0", "beta0", "theta", "gamma", "epsilon", "max_iter", "feasibility_factor", "solver"},
                   "baseline");
    read(b, "alpha0", c.baseline.alpha0);
    read(b, "beta0", c.baseline.beta0);
    read(b, "theta", c.baseline.theta);
    read(b, "gamma", c.baseline.gamma);
    read(b, "epsilon", c.baseline.epsilon);
    read(b, "max_iter", c.baseline.max_iter);
    read(b, "feasibility_factor", c.baseline.feasibility_factor);
    std::string solver = std::string(to_string(c.baseline.solver));
    read(b, "solver", solver);
    require(solver == "banded" || solver == "dense", ErrorCode::BadConfig, "baseline.solver: banded|dense");
    c.baseline.solver = solver == "banded" ? SolverKind::Banded : SolverKind::DenseLU;
  }
  if (j.contains("spectrum")) {
    const auto& s = j["spectrum"];
    reject_unknown(s, {"grid", "extend", "pad_fraction", "taper"}, "spectrum");
    read(s, "grid", c.spectrum.intervals);
    read(s, "extend", c.spectrum.extend);
    read(s, "pad_fraction", c.spectrum.pad_fraction);
    std::string taper = std::string(autovmd::to_string(c.spectrum.taper));
    read(s, "taper", taper);
    auto t = parse_taper(taper);
    require(t.has_value(), ErrorCode::BadConfig, "spectrum.taper: unknown taper " + taper);
    c.spectrum.taper = *t;
  }
  if (j.contains("modes")) {
    const auto& m = j["modes"];
    reject_unknown(m, {"min_width", "mass_floor", "peak_floor", "bridge_gap", "center", "kde_points", "bandwidth"},
                   "modes");
    read(m, "min_width", c.modes.min_width);
    read(m, "mass_floor", c.modes.mass_floor);
    read(m, "peak_floor", c.modes.peak_floor);
    read(m, "bridge_gap", c.modes.bridge_gap);
    read(m, "kde_points", c.modes.kde_points);
    read(m, "bandwidth", c.modes.bandwidth);
    std::string center = std::string(to_string(c.modes.center));
    read(m, "center", center);
    require(center == "centroid" || center == "argmax", ErrorCode::BadConfig, "modes.center: centroid|argmax");
    c.modes.center = center == "centroid" ? CenterEstimator::Centroid : CenterEstimator::Argmax;
  }
  if (j.contains("vmd")) {
    const auto& v = j["vmd"];
    reject_unknown(v, {"alpha_penalty", "tau", "tol", "max_iter", "dc_lock"}, "vmd");
    read(v, "alpha_penalty", c.vmd.alpha_penalty);
    read(v, "tau", c.vmd.tau);
    read(v, "tol", c.vmd.tol);
    read(v, "max_iter", c.vmd.max_iter);
    read(v, "dc_lock", c.vmd.dc_lock);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, {"dir", "emit_plots", "emit_traces"}, "output");
    std::string dir = c.output.dir.string();
    read(o, "dir", dir);
    c.output.dir = dir;
    read(o, "emit_plots", c.output.emit_plots);
    read(o, "emit_traces", c.output.emit_traces);
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, "config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const InputSpec& in)
{
  json j;
  j["signal"] = in.signal ? json(*in.signal) : json(nullptr);
  j["csv"] = in.csv ? json(in.csv->string()) : json(nullptr);
  j["samples"] = in.samples;
  j["take"] = in.take;
  j["downsample"] = in.downsample;
  return j;
}

InputSpec input_from_json(const json& j)
{
  InputSpec in;
  if (j.contains("signal") && !j["signal"].is_null())
    in.signal = j["signal"].get<std::string>();
  if (j.contains("csv") && !j["csv"].is_null())
    in.csv = j["csv"].get<std::string>();
  read(j, "samples", in.samples);
  read(j, "take", in.take);
  read(j, "downsample", in.downsample);
  return in;
}

Spectrum prepare_spectrum(const RawSignal& signal, const SpectrumConfig& config)
{
  auto spec = half_spectrum(signal, config.intervals + 1);
  if (config.extend)
    spec = extend_spectrum(spec, config.pad_fraction, config.taper);
  return spec;
}

Analysis analyze(const RawSignal& signal, const PipelineConfig& config)
{
  Analysis a;
  a.signal = signal;
  a.spectrum = prepare_spectrum(signal, config.spectrum);
  const auto stencils = build_stencils(a.spectrum.grid_count(), a.spectrum.grid_spacing);
  a.baseline = find_baseline(a.spectrum.values, stencils, config.baseline);
  a.modes = detect_modes(a.spectrum.values, a.baseline.g_star, a.spectrum, config.modes);
  return a;
}

VmdConfig seeded_vmd_config(const ModeSet& modes, const VmdOptions& o)
{
  VmdConfig v;
  v.omega_init = modes.centers();
  if (v.omega_init.empty())
    v.omega_init = {0.0};
  for (auto& w : v.omega_init)
    w = std::clamp(w, 0.0, 0.5);
  std::sort(v.omega_init.begin(), v.omega_init.end());
  v.mode_count = v.omega_init.size();
  v.alpha_penalty = o.alpha_penalty;
  v.tau = o.tau;
  v.tol = o.tol;
  v.max_iter = o.max_iter;
  v.dc_lock = o.dc_lock;
  return v;
}

Decomposition decompose_signal(const RawSignal& signal, const PipelineConfig& config)
{
  Decomposition d;
  d.analysis = analyze(signal, config);
  d.vmd_config = seeded_vmd_config(d.analysis.modes, config.vmd);
  d.vmd = decompose(signal, d.vmd_config);
  d.eval = evaluate(signal.label, signal.samples, d.vmd.modes);
  return d;
}

json to_json(const Spectrum& s)
{
  json j{{"values", s.values}, {"grid_spacing", s.grid_spacing}, {"nyquist_map", s.nyquist_map}};
  if (s.extension) {
    const auto& e = *s.extension;
    j["extension"] = {{"left_pad", e.left_pad},           {"right_pad", e.right_pad},
                      {"original_count", e.original_count}, {"floor_value", e.floor_value},
                      {"taper", to_string(e.taper)}};
  } else {
    j["extension"] = nullptr;
  }
  return j;
}

json to_json(const ModeSet& m)
{
  json modes = json::array();
  for (const auto& x : m.modes)
    modes.push_back({{"lo", x.lo}, {"hi", x.hi}, {"center_cps", x.center_cps}, {"mass", x.mass}});
  return {{"count", m.count()}, {"threshold", m.threshold}, {"bandwidth", m.bandwidth}, {"modes", modes}};
}

json to_json(const BaselineResult& r, bool traces)
{
  json j{{"iterations", r.iterations},
         {"converged", r.converged},
         {"wall_seconds", r.wall_seconds},
         {"feasibility_gap", r.feasibility_gap},
         {"monotonicity_violations", r.monotonicity_violations},
         {"worst_decrease", r.worst_decrease},
         {"final_residual", r.residual_trace.empty() ? 0.0 : r.residual_trace.back()},
         {"g_star", r.g_star}};
  if (traces) {
    j["residual_trace"] = r.residual_trace;
    j["dual_objective_trace"] = r.dual_objective_trace;
  }
  return j;
}

json to_json(const VmdResult& r)
{
  return {{"iterations", r.iterations}, {"converged", r.converged},
          {"omega_final", r.omega_final}, {"imag_leakage", r.imag_leakage},
          {"modes", r.modes},             {"residual", r.residual}};
}

json to_json(const EvalReport& r)
{
  json j{{"experiment", r.experiment}, {"K", r.mode_count}, {"cc", r.cc},
         {"pr", r.pr},                 {"recon_rel_err", r.recon_rel_err}};
  j["max_center_diff"] = r.max_center_diff ? json(*r.max_center_diff) : json(nullptr);
  return j;
}

json run_record(const std::string& command, const InputSpec& input, const PipelineConfig& config,
                const Analysis& a, const Decomposition* d)
{
  json j;
  j["schema"] = record_schema;
  j["tool"] = "autovmd";
  j["version"] = tool_version;
  j["command"] = command;
  j["input"] = to_json(input);
  j["input"]["label"] = a.signal.label;
  j["input"]["sample_count"] = a.signal.samples.size();
  j["input"]["sample_rate"] = a.signal.sample_rate;
  j["config"] = to_json(config);
  j["spectrum"] = to_json(a.spectrum);
  j["baseline"] = to_json(a.baseline, config.output.emit_traces);
  j["modes"] = to_json(a.modes);
  if (d) {
    j["vmd"] = to_json(d->vmd);
    j["eval"] = to_json(d->eval);
  }
  return j;
}

void write_modes_csv(const std::filesystem::path& path, const RawSignal& signal, const VmdResult& r)
{
  std::ofstream out(path);
  require(out.good(), ErrorCode::IoError, "cannot write " + path.string());
  out.precision(17);
  out << "t";
  for (std::size_t k = 0; k < r.modes.size(); ++k)
    out << ",u_" << k + 1;
  out << ",residual\n";
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    out << static_cast<double>(i) / signal.sample_rate;
    for (const auto& u : r.modes)
      out << ',' << u[i];
    out << ',' << r.residual[i] << '\n';
  }
}

const std::vector<ExperimentReference>& experiment_references()
{
  static const std::vector<ExperimentReference> refs = {
    {SignalName::Exp1, 1, {0.0550}, 0.01, {0.05}, 5161},
    {SignalName::Exp2, 2, {0.0300, 0.0575}, 0.01, {0.025, 0.05}, 5258},
    {SignalName::Exp3, 4, {0.0100, 0.0775, 0.1550, 0.2075}, 0.01, {}, 3026},
    {SignalName::Exp4, 3, {0.0125, 0.0875, 0.2475}, 0.02, {}, 3463},
    {SignalName::Exp5, 11,
     {0.005, 0.0775, 0.1, 0.125, 0.1550, 0.1800, 0.2075, 0.2325, 0.2575, 0.2825, 0.3075}, 0.01,
     {0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.225, 0.25, 0.275, 0.3}, 1768},
  };
  return refs;
}

} // namespace autovmd
