// Acceptance run: one PASS/FAIL/SKIP line per criterion.
//   acceptance        run all criteria, exit 1 if any failed
//   acceptance <n>    run criterion n only; exit 0 pass, 1 fail, 77 skip

#include "oracles.hpp"

#include "autovmd/bench.hpp"
#include "autovmd/pipeline.hpp"
#include "autovmd/stencils.hpp"
#include "autovmd/vmd.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace autovmd;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome
{
  Status status;
  std::string detail;
};

Outcome verdict(bool ok, const std::string& detail) { return {ok ? Status::Pass : Status::Fail, detail}; }

const std::vector<ExperimentRow>& bench_rows()
{
  static const std::vector<ExperimentRow> rows = [] {
    std::vector<ExperimentRow> out;
    for (const auto& ref : experiment_references())
      out.push_back(run_experiment(ref, PipelineConfig{}));
    return out;
  }();
  return rows;
}

std::vector<double> grid_fn(std::size_t n, const std::function<double(double)>& fn)
{
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = fn(static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

Outcome mode_counts()
{
  std::ostringstream d;
  bool ok = true;
  for (const auto& r : bench_rows()) {
    d << r.experiment << " K=" << r.mode_count << "/" << r.expected_count << " " << r.total_seconds << "s; ";
    ok = ok && r.mode_count == r.expected_count && r.total_seconds <= 10.0;
  }
  return verdict(ok, d.str());
}

Outcome center_frequencies()
{
  std::ostringstream d;
  bool ok = true;
  const auto& refs = experiment_references();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& r = bench_rows()[i];
    d << r.experiment << " diff=";
    if (r.max_center_diff)
      d << *r.max_center_diff << "/" << refs[i].center_tol;
    else
      d << "n/a";
    d << (r.tones_ok ? "" : " tones-missed") << "; ";
    ok = ok && r.max_center_diff && *r.max_center_diff <= refs[i].center_tol && r.tones_ok;
  }
  return verdict(ok, d.str());
}

Outcome ecg_metrics()
{
  const char* dir = std::getenv("AUTOVMD_ECG_DIR");
  if (!dir)
    return {Status::Skip, "AUTOVMD_ECG_DIR not set"};
  struct Case
  {
    const char* file;
    std::size_t reference_k;
  };
  std::ostringstream d;
  bool ok = true;
  for (const Case c : {Case{"ecg100_mlii.csv", 15}, Case{"ecg124_v4.csv", 14}}) {
    const auto path = std::filesystem::path(dir) / c.file;
    if (!std::filesystem::exists(path))
      return {Status::Skip, path.string() + " missing"};
    InputSpec in;
    in.csv = path;
    in.take = 2000;
    in.downsample = 10;
    PipelineConfig cfg;
    cfg.vmd.tau = 1.0;
    cfg.vmd.tol = 1e-10;
    cfg.vmd.max_iter = 5000;
    const auto dec = decompose_signal(load_input(in), cfg);
    const auto k = dec.analysis.modes.count();
    const long dk = static_cast<long>(k) - static_cast<long>(c.reference_k);
    d << c.file << " K=" << k << " CC=" << dec.eval.cc << " PR=" << dec.eval.pr << "; ";
    ok = ok && dec.eval.cc >= 0.99 && dec.eval.pr <= 1e-3 && std::abs(dk) <= 3;
  }
  return verdict(ok, d.str());
}

Outcome initialization_advantage()
{
  const auto sig = gen_signal(SignalName::Exp4);
  const auto dec = decompose_signal(sig, PipelineConfig{});
  auto uniform_err = [&](std::size_t k) {
    VmdConfig c;
    c.mode_count = k;
    c.omega_init = uniform_omega(k);
    std::vector<double> sum(sig.samples.size(), 0.0);
    for (const auto& u : decompose(sig, c).modes)
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] += u[i];
    return relative_recon_error(sig.samples, sum);
  };
  const double ours = dec.eval.recon_rel_err, u3 = uniform_err(3), u2 = uniform_err(2);
  std::ostringstream d;
  d << "K=" << dec.vmd.modes.size() << " ours=" << ours << " uniform3=" << u3 << " uniform2=" << u2;
  return verdict(dec.vmd.modes.size() == 3 && ours < u3 && ours < u2, d.str());
}

Outcome extrapolation_benefit()
{
  const auto ab = compare_extension(PipelineConfig{}, 1500);
  std::ostringstream d;
  d << "extended gap=" << ab.extended.feasibility_gap << " res=" << ab.extended.final_residual
    << "; plain gap=" << ab.plain.feasibility_gap << " res=" << ab.plain.final_residual;
  return verdict(ab.improved(), d.str());
}

Outcome iteration_counts()
{
  std::ostringstream d;
  bool ok = true;
  for (const auto& r : bench_rows()) {
    d << r.experiment << " " << r.iterations << "<=" << 4 * r.reference_iterations << (r.converged ? "" : " (not converged)")
      << "; ";
    ok = ok && r.converged && r.iterations <= 4 * r.reference_iterations;
  }
  return verdict(ok, d.str());
}

double poly(const std::vector<double>& c, double x, int deriv)
{
  double s = 0;
  for (std::size_t p = static_cast<std::size_t>(deriv); p < c.size(); ++p) {
    double coef = c[p];
    for (int q = 0; q < deriv; ++q)
      coef *= static_cast<double>(p) - q;
    s += coef * std::pow(x, static_cast<double>(p) - deriv);
  }
  return s;
}

Outcome stencil_exactness()
{
  // roundoff of the order-k stencil grows like eps / h^k, so use a coarse grid
  auto r = oracle::rng(7);
  const std::size_t n = 11;
  const double h = 1.0 / 10;
  const auto st = build_stencils(n, h);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto deg = static_cast<std::size_t>(t % 5);
    const auto c = oracle::uniform(r, deg + 1, -2, 2);
    const auto v = grid_fn(n, [&](double x) { return poly(c, x, 0); });
    for (int k = 1; k <= 4; ++k) {
      const auto d = apply_derivative(st, k, v);
      double scale = 1.0;
      for (std::size_t i = 2; i + 2 < n; ++i)
        scale = std::max(scale, std::abs(poly(c, static_cast<double>(i) * h, k)));
      for (std::size_t row = 0; row < d.size(); ++row)
        worst = std::max(worst, std::abs(d[row] - poly(c, static_cast<double>(row + 2) * h, k)) / scale);
    }
  }
  std::ostringstream d;
  d << "worst relative error " << worst << " (h = 1/10)";
  return verdict(worst <= 1e-9, d.str());
}

Outcome homogeneous_uniqueness()
{
  auto r = oracle::rng(8);
  double worst = 0;
  for (std::size_t n : {21u, 201u})
    for (int t = 0; t < 50; ++t) {
      const auto st = build_stencils(n, 1.0 / static_cast<double>(n - 1));
      const auto alpha = oracle::uniform(r, n, 1e-3, 10.0);
      const std::vector<double> zero(n, 0.0);
      for (double v : solve(assemble_system(st, alpha, zero, zero)))
        worst = std::max(worst, std::abs(v));
    }
  std::ostringstream d;
  d << "max |g| = " << worst;
  return verdict(worst <= 1e-8, d.str());
}

Outcome dual_invariants()
{
  std::ostringstream d;
  bool ok = true;
  const BaselineConfig cfg;
  for (auto name : {SignalName::Exp1, SignalName::Exp2, SignalName::Exp3, SignalName::Exp4, SignalName::Exp5}) {
    const auto spec = prepare_spectrum(gen_signal(name), SpectrumConfig{});
    const auto& f = spec.values;
    const auto st = build_stencils(spec.grid_count(), spec.grid_spacing);
    // step the iteration by hand so every multiplier iterate is inspected
    auto duals = DualState::zeros(f.size());
    auto g = primal_solve(st, f, cfg, duals);
    double prev = discrete_lagrangian(g, duals, cfg, f, st);
    std::size_t negatives = 0, drops = 0, it = 0;
    for (; it < cfg.max_iter; ++it) {
      duals = dual_step(duals, g, f, cfg.theta, cfg.gamma);
      for (std::size_t i = 0; i < f.size(); ++i)
        negatives += (duals.lambda[i] < 0.0) + (duals.mu[i] < 0.0);
      const auto next = primal_solve(st, f, cfg, duals);
      const double val = discrete_lagrangian(next, duals, cfg, f, st);
      drops += val < prev - 1e-9;
      prev = val;
      double num = 0, den = 0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        num += (next[i] - g[i]) * (next[i] - g[i]);
        den += g[i] * g[i];
      }
      g = next;
      if (std::sqrt(num) < cfg.epsilon * std::sqrt(den))
        break;
    }
    const auto lib = find_baseline(f, st, cfg);
    d << to_string(name) << " it=" << it + 1 << " neg=" << negatives << " drops=" << drops
      << " lib_drops=" << lib.monotonicity_violations << "; ";
    ok = ok && negatives == 0 && drops == 0 && lib.monotonicity_violations == 0;
  }
  return verdict(ok, d.str());
}

Outcome oracle_equivalence()
{
  auto r = oracle::rng(10);
  const std::size_t n = 21;
  const double h = 1.0 / 20;
  const auto st = build_stencils(n, h);
  BaselineConfig c;
  c.alpha0 = 1e-3;
  c.theta = c.gamma = 0.6;
  c.epsilon = 1e-10;
  c.max_iter = 400000;
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::uniform(r, 9, 0, 1);
    const auto f = grid_fn(n, [&](double x) {
      double y = 0.2 + 0.1 * x;
      for (int k = 0; k < 3; ++k)
        y += (0.2 + 0.6 * p[3 * k]) * std::exp(-0.5 * std::pow((x - 0.1 - 0.8 * p[3 * k + 1]) / (0.03 + 0.07 * p[3 * k + 2]), 2));
      return y;
    });
    const auto res = find_baseline(f, st, c);
    const auto ref = oracle::box_qp(f, c.alpha0, c.beta0, h);
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(res.g_star[i] - ref[i]));
    if (!res.converged)
      return {Status::Fail, "instance " + std::to_string(t) + " did not converge"};
  }
  std::ostringstream d;
  d << "max L-inf distance " << worst;
  return verdict(worst <= 1e-3, d.str());
}

Outcome hadamard_identity()
{
  auto r = oracle::rng(11);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto rows = static_cast<Eigen::Index>(2 + t % 9), cols = static_cast<Eigen::Index>(2 + t % 6);
    Eigen::MatrixXd a(rows, cols), b(rows, cols);
    Eigen::VectorXd av(cols), bv(cols);
    for (auto* m : {&a, &b})
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
          (*m)(i, j) = oracle::uniform(r, 1, -1, 1)[0];
    for (auto* v : {&av, &bv})
      for (Eigen::Index j = 0; j < cols; ++j)
        (*v)(j) = oracle::uniform(r, 1, -1, 1)[0];
    const Eigen::VectorXd aa = a * av;
    const Eigen::VectorXd lhs = aa.cwiseProduct(b * bv);
    const Eigen::VectorXd rhs = broadcast_hadamard({aa.data(), static_cast<std::size_t>(rows)}, b) * bv;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  std::ostringstream d;
  d << "max abs difference " << worst;
  return verdict(worst <= 1e-12, d.str());
}

Outcome vmd_invariants()
{
  auto r = oracle::rng(12);
  double recon = 0, leak = 0;
  bool omega_ok = true, gain_ok = true;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 50 + 13 * static_cast<std::size_t>(t);
    RawSignal s{oracle::uniform(r, n, -3, 3), 1.0, "random"};
    VmdConfig c;
    c.mode_count = 1 + static_cast<std::size_t>(t % 5);
    c.omega_init = oracle::uniform(r, c.mode_count, 0, 0.5);
    std::sort(c.omega_init.begin(), c.omega_init.end());
    c.tau = (t % 3) * 0.4;
    c.alpha_penalty = oracle::uniform(r, 1, 50, 5000)[0];
    c.max_iter = 150;
    const auto res = decompose(s, c);
    double scale = 0;
    for (double v : s.samples)
      scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      double sum = res.residual[i];
      for (const auto& u : res.modes)
        sum += u[i];
      recon = std::max(recon, std::abs(sum - s.samples[i]) / scale);
    }
    for (double w : res.omega_final)
      omega_ok = omega_ok && w >= 0.0 && w <= 0.5;
    leak = std::max(leak, res.imag_leakage);

    // per-bin gain of a single mode update
    const std::size_t nb = n / 2 + 1;
    VmdState st;
    st.u_hat.assign(c.mode_count, std::vector<cplx>(nb, 0.0));
    st.omega = c.omega_init;
    st.lambda_hat.assign(nb, 0.0);
    st.bin_freqs.resize(nb);
    for (std::size_t j = 0; j < nb; ++j)
      st.bin_freqs[j] = static_cast<double>(j) / static_cast<double>(n);
    st.locked.assign(c.mode_count, false);
    const auto re = oracle::uniform(r, nb, -1, 1), im = oracle::uniform(r, nb, -1, 1);
    std::vector<cplx> f(nb);
    for (std::size_t j = 0; j < nb; ++j)
      f[j] = {re[j], im[j]};
    const auto u = update_mode(st, 0, f, c.alpha_penalty);
    for (std::size_t j = 0; j < nb; ++j)
      gain_ok = gain_ok && std::abs(u[j]) <= std::abs(f[j]) * (1 + 1e-15);
  }
  std::ostringstream d;
  d << "recon " << recon << " leakage " << leak << (omega_ok ? "" : " omega out of range")
    << (gain_ok ? "" : " gain > 1");
  return verdict(recon <= 1e-10 && leak <= 1e-9 && omega_ok && gain_ok, d.str());
}

Outcome kde_normalization()
{
  auto r = oracle::rng(13);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    auto v = oracle::uniform(r, 40 + static_cast<std::size_t>(t) * 2, 0, 1);
    for (auto& x : v)
      x = std::pow(x, 1 + t % 4) * 0.2;
    const auto k = kde_density(v, silverman_bandwidth(v));
    double s = 0;
    for (std::size_t i = 1; i < k.density.size(); ++i)
      s += 0.5 * (k.density[i] + k.density[i - 1]) * (k.eval_points[i] - k.eval_points[i - 1]);
    worst = std::max(worst, std::abs(s - 1));
  }
  bool clusters_ok = true;
  for (int t = 0; t < 20; ++t) {
    auto v = oracle::uniform(r, 170, 0.0, 0.02);
    const auto hi = oracle::uniform(r, 30, 0.4, 0.5);
    v.insert(v.end(), hi.begin(), hi.end());
    const double ts = best_threshold(kde_density(v, silverman_bandwidth(v)));
    clusters_ok = clusters_ok && ts >= 0.0 && ts <= 0.02;
  }
  std::ostringstream d;
  d << "worst |integral - 1| " << worst << (clusters_ok ? "" : "; threshold missed the majority cluster");
  return verdict(worst <= 0.05 && clusters_ok, d.str());
}

const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
    {"mode counts", mode_counts},
    {"center frequencies", center_frequencies},
    {"ECG metrics", ecg_metrics},
    {"Exp4 initialization advantage", initialization_advantage},
    {"extrapolation benefit", extrapolation_benefit},
    {"convergence iteration counts", iteration_counts},
    {"stencil exactness", stencil_exactness},
    {"homogeneous uniqueness", homogeneous_uniqueness},
    {"dual invariants", dual_invariants},
    {"oracle equivalence", oracle_equivalence},
    {"broadcast-Hadamard identity", hadamard_identity},
    {"VMD invariants", vmd_invariants},
    {"KDE normalization", kde_normalization},
};

Status run(std::size_t i)
{
  Outcome o;
  try {
    o = criteria[i].second();
  } catch (const std::exception& e) {
    o = {Status::Fail, std::string("exception: ") + e.what()};
  }
  const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
  std::cout << tag << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  return o.status;
}

} // namespace

int main(int argc, char** argv)
{
  if (argc > 1) {
    const auto n = static_cast<std::size_t>(std::atoi(argv[1]));
    if (n < 1 || n > criteria.size()) {
      std::cerr << "criterion must be 1.." << criteria.size() << '\n';
      return 2;
    }
    const auto s = run(n - 1);
    return s == Status::Pass ? 0 : s == Status::Skip ? 77 : 1;
  }
  bool failed = false;
  for (std::size_t i = 0; i < criteria.size(); ++i)
    failed = (run(i) == Status::Fail) || failed;
  return failed ? 1 : 0;
}
