// autovmd command-line driver: analyze | decompose | bench | plot

#include "autovmd/bench.hpp"
#include "autovmd/error.hpp"
#include "autovmd/pipeline.hpp"
#include "autovmd/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace autovmd;

namespace {

enum Exit : int
{
  ok = 0,
  usage_or_io = 1,
  not_converged = 2,
  bound_failed = 3,
};

// Flag values that override the config file when given.
struct Overrides
{
  std::optional<std::string> signal, csv, config, dump_matrix;
  std::optional<std::size_t> take, downsample, grid, samples, max_iter;
  std::optional<double> eps, theta, gamma, alpha0, beta0, vmd_alpha, tau, vmd_tol;
  std::optional<std::string> out;
  bool plots = false;
  bool no_extend = false;
};

void add_common(CLI::App* app, Overrides& o, bool with_input)
{
  if (with_input) {
    app->add_option("--signal", o.signal, "built-in signal: exp1..exp5, bandstop");
    app->add_option("--csv", o.csv, "one-column CSV signal");
    app->add_option("--take", o.take, "keep the first n samples");
    app->add_option("--downsample", o.downsample, "keep every r-th sample");
    app->add_option("--samples", o.samples, "sample count for built-in signals");
    app->add_option("--dump-matrix", o.dump_matrix, "write the BVP system matrix as text");
  }
  app->add_option("--grid", o.grid, "spectrum intervals N (grid has N+1 nodes)");
  app->add_option("--eps", o.eps, "baseline stopping tolerance");
  app->add_option("--max-iter", o.max_iter, "baseline iteration cap");
  app->add_option("--theta", o.theta, "step for the g <= f multiplier");
  app->add_option("--gamma", o.gamma, "step for the g >= 0 multiplier");
  app->add_option("--alpha0", o.alpha0, "curvature weight");
  app->add_option("--beta0", o.beta0, "integral weight");
  app->add_option("--vmd-alpha", o.vmd_alpha, "VMD bandwidth penalty");
  app->add_option("--tau", o.tau, "VMD multiplier step");
  app->add_option("--vmd-tol", o.vmd_tol, "VMD stopping tolerance");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--config", o.config, "JSON config file");
  app->add_flag("--plots", o.plots, "write SVG plots");
  app->add_flag("--no-extend", o.no_extend, "skip spectrum extension");
}

PipelineConfig resolve(const Overrides& o)
{
  PipelineConfig c = o.config ? load_config(*o.config) : PipelineConfig{};
  if (o.grid) c.spectrum.intervals = *o.grid;
  if (o.no_extend) c.spectrum.extend = false;
  if (o.eps) c.baseline.epsilon = *o.eps;
  if (o.max_iter) c.baseline.max_iter = *o.max_iter;
  if (o.theta) c.baseline.theta = *o.theta;
  if (o.gamma) c.baseline.gamma = *o.gamma;
  if (o.alpha0) c.baseline.alpha0 = *o.alpha0;
  if (o.beta0) c.baseline.beta0 = *o.beta0;
  if (o.vmd_alpha) c.vmd.alpha_penalty = *o.vmd_alpha;
  if (o.tau) c.vmd.tau = *o.tau;
  if (o.vmd_tol) c.vmd.tol = *o.vmd_tol;
  if (o.out) c.output.dir = *o.out;
  if (o.plots) c.output.emit_plots = true;
  validate(c.baseline);
  return c;
}

InputSpec input_of(const Overrides& o)
{
  InputSpec in;
  in.signal = o.signal;
  if (o.csv)
    in.csv = *o.csv;
  if (o.samples) in.samples = *o.samples;
  if (o.take) in.take = *o.take;
  if (o.downsample) in.downsample = *o.downsample;
  return in;
}

void write_json(const fs::path& p, const nlohmann::json& j)
{
  std::ofstream out(p);
  require(out.good(), ErrorCode::IoError, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

void print_modes(const ModeSet& m)
{
  std::cout << "K = " << m.count() << "  (threshold " << m.threshold << ")\n";
  for (const auto& x : m.modes)
    std::cout << "  center " << x.center_cps << " cycles/sample  [" << x.lo << ", " << x.hi << "]  mass " << x.mass
              << '\n';
}

void maybe_dump_matrix(const Overrides& o, const Analysis& a, const PipelineConfig& c)
{
  if (!o.dump_matrix)
    return;
  const auto st = build_stencils(a.spectrum.grid_count(), a.spectrum.grid_spacing);
  const std::vector<double> alpha(st.grid_count, c.baseline.alpha0);
  const std::vector<double> zero(st.grid_count, 0.0);
  std::ofstream out(*o.dump_matrix);
  require(out.good(), ErrorCode::IoError, "cannot write " + *o.dump_matrix);
  write_matrix_text(out, assemble_system(st, alpha, zero, a.spectrum.values).matrix);
}

int cmd_analyze(const Overrides& o)
{
  const auto c = resolve(o);
  const auto in = input_of(o);
  const auto a = analyze(load_input(in), c);
  fs::create_directories(c.output.dir);
  const auto rec = run_record("analyze", in, c, a);
  write_json(c.output.dir / "record.json", rec);
  maybe_dump_matrix(o, a, c);
  if (c.output.emit_plots)
    svg::write_plots(rec, c.output.dir);
  std::cout << a.signal.label << ": baseline " << (a.baseline.converged ? "converged" : "did not converge")
            << " after " << a.baseline.iterations << " iterations (" << a.baseline.wall_seconds << " s)\n";
  print_modes(a.modes);
  return a.baseline.converged ? ok : not_converged;
}

int cmd_decompose(const Overrides& o)
{
  const auto c = resolve(o);
  const auto in = input_of(o);
  const auto d = decompose_signal(load_input(in), c);
  fs::create_directories(c.output.dir);
  const auto rec = run_record("decompose", in, c, d.analysis, &d);
  write_json(c.output.dir / "record.json", rec);
  write_modes_csv(c.output.dir / "modes.csv", d.analysis.signal, d.vmd);
  {
    std::ofstream m(c.output.dir / "metrics.csv");
    require(m.good(), ErrorCode::IoError, "cannot write metrics.csv");
    m << csv_header(d.eval) << '\n' << csv_row(d.eval) << '\n';
  }
  maybe_dump_matrix(o, d.analysis, c);
  if (c.output.emit_plots)
    svg::write_plots(rec, c.output.dir);
  print_modes(d.analysis.modes);
  std::cout << "VMD " << (d.vmd.converged ? "converged" : "did not converge") << " after " << d.vmd.iterations
            << " iterations\n"
            << "CC " << d.eval.cc << "  PR " << d.eval.pr << "  relative error " << d.eval.recon_rel_err << '\n';
  return d.analysis.baseline.converged && d.vmd.converged ? ok : not_converged;
}

int cmd_bench(const Overrides& o)
{
  const auto c = resolve(o);
  const std::size_t samples = o.samples.value_or(200);
  fs::create_directories(c.output.dir);
  nlohmann::json j;
  j["schema"] = record_schema;
  j["version"] = tool_version;
  j["config"] = to_json(c);
  j["experiments"] = nlohmann::json::array();

  bool all_ok = true;
  std::ofstream csv(c.output.dir / "bench.csv");
  require(csv.good(), ErrorCode::IoError, "cannot write bench.csv");
  csv << bench_csv_header() << '\n';
  std::cout << bench_csv_header() << '\n';
  for (const auto& ref : experiment_references()) {
    const auto row = run_experiment(ref, c, samples);
    csv << bench_csv_row(row) << '\n';
    std::cout << bench_csv_row(row) << '\n';
    for (const auto& f : row.failures)
      std::cout << "  " << row.experiment << ": " << f << '\n';
    all_ok = all_ok && row.failures.empty();
    j["experiments"].push_back(to_json(row));
  }
  const auto ab = compare_extension(c, 1500, samples);
  std::cout << "bandstop extension A/B at 1500 iterations: extended gap " << ab.extended.feasibility_gap
            << " residual " << ab.extended.final_residual << "; plain gap " << ab.plain.feasibility_gap
            << " residual " << ab.plain.final_residual << (ab.improved() ? "  ok" : "  FAIL") << '\n';
  all_ok = all_ok && ab.improved();
  j["extension_ab"] = {{"budget", 1500},
                       {"extended", {{"feasibility_gap", ab.extended.feasibility_gap},
                                     {"final_residual", ab.extended.final_residual},
                                     {"iterations", ab.extended.iterations}}},
                       {"plain", {{"feasibility_gap", ab.plain.feasibility_gap},
                                  {"final_residual", ab.plain.final_residual},
                                  {"iterations", ab.plain.iterations}}},
                       {"improved", ab.improved()}};
  j["all_bounds_met"] = all_ok;
  write_json(c.output.dir / "bench.json", j);
  return all_ok ? ok : bound_failed;
}

int cmd_plot(const std::string& record_path, const std::optional<std::string>& out)
{
  std::ifstream in(record_path);
  require(in.good(), ErrorCode::IoError, "cannot open " + record_path);
  nlohmann::json rec;
  try {
    in >> rec;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, record_path + ": " + e.what());
  }
  const fs::path dir = out ? fs::path(*out) : fs::path(record_path).parent_path();
  for (const auto& p : svg::write_plots(rec, dir.empty() ? fs::path(".") : dir))
    std::cout << p.string() << '\n';
  return ok;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Automatic mode count and center-frequency estimation for variational mode decomposition"};
  app.require_subcommand(1);
  Overrides analyze_o, decompose_o, bench_o;
  std::string record;
  std::optional<std::string> plot_out;

  auto* an = app.add_subcommand("analyze", "spectrum, supporting baseline and mode detection");
  add_common(an, analyze_o, true);
  auto* de = app.add_subcommand("decompose", "analyze, then VMD seeded with the detected modes");
  add_common(de, decompose_o, true);
  auto* be = app.add_subcommand("bench", "run the benchmark experiments and check their bounds");
  add_common(be, bench_o, false);
  be->add_option("--samples", bench_o.samples, "sample count for built-in signals");
  auto* pl = app.add_subcommand("plot", "render SVG plots from a run record");
  pl->add_option("record", record, "record.json written by analyze or decompose")->required();
  pl->add_option("--out", plot_out, "output directory (default: next to the record)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage_or_io;
  }

  try {
    if (an->parsed())
      return cmd_analyze(analyze_o);
    if (de->parsed())
      return cmd_decompose(decompose_o);
    if (be->parsed())
      return cmd_bench(bench_o);
    return cmd_plot(record, plot_out);
  } catch (const Error& e) {
    std::cerr << "autovmd: " << to_string(e.code()) << ": " << e.what() << '\n';
    return usage_or_io;
  } catch (const std::exception& e) {
    std::cerr << "autovmd: " << e.what() << '\n';
    return usage_or_io;
  }
}
