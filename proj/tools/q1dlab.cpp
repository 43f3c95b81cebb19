// Command-line front end of the quasi-1D focusing boson laboratory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "q1d/harness.hpp"
#include "q1d/hierarchy.hpp"
#include "q1d/io.hpp"
#include "q1d/marginals.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitAssert = 2;
constexpr int kExitConfig = 3;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 2;
};

q1d::ExperimentConfig load(const GlobalArgs& g, std::string* digest) {
  q1d::ExperimentConfig cfg;
  std::string text;
  if (!g.config_path.empty()) {
    std::ifstream is(g.config_path);
    if (!is) throw q1d::ConfigError("cannot open config " + g.config_path);
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
    cfg = q1d::parse_config(text);
  }
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  if (digest) *digest = q1d::config_hash(text);
  return cfg;
}

void write_json_lines(const fs::path& path, const std::vector<json>& rows) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const auto& r : rows) lines.push_back(r.dump());
  q1d::write_lines(path.string(), lines);
}

int cmd_evolve(const GlobalArgs& g) {
  std::string digest;
  const q1d::ExperimentConfig cfg = load(g, &digest);
  auto basis =
      q1d::build_basis(cfg.levels, cfg.quad_nodes, cfg.z_points, cfg.z_length);
  const int n = cfg.n_list.front();
  const double omega = cfg.omega_for(n, 0);
  q1d::HamiltonianSpec spec(basis, cfg.potential(), {n, omega, 1.0, 0.0});
  q1d::ManyBodyState psi0 = q1d::build_initial_data(cfg, spec);
  q1d::EvolveOptions opts;
  opts.sample_stride =
      std::max(1, static_cast<int>(std::lround(cfg.t_final / cfg.samples / cfg.dt)));
  const auto traj = q1d::evolve_nbody(spec, psi0, cfg.t_final, cfg.dt, opts);

  fs::create_directories(fs::path(g.out_dir) / "snapshots");
  std::vector<json> rows;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    json j;
    j["t"] = traj.times[i];
    j["norm_drift"] = traj.norm_drift[i];
    j["energy_moment1"] = traj.energy_moment1[i];
    j["config"] = digest;
    rows.push_back(j);
  }
  if (traj.times.size() >= 3) {
    const double dt_fd = traj.times[1] - traj.times[0];
    const auto res = q1d::bbgky_residual(traj, spec, 1, dt_fd);
    for (size_t i = 0; i < res.times.size(); ++i) {
      json j;
      j["name"] = "bbgky-residual";
      j["k"] = 1;
      j["t"] = res.times[i];
      j["residual"] = res.residuals[i];
      j["dt_fd"] = dt_fd;
      j["config"] = digest;
      rows.push_back(j);
    }
  }
  write_json_lines(fs::path(g.out_dir) / "evolve.jsonl", rows);
  q1d::save_state(traj.states.back(),
                  (fs::path(g.out_dir) / "snapshots" / "final.bin").string());
  std::cout << "evolved N=" << n << " omega=" << omega << " to t=" << cfg.t_final
            << ", samples=" << traj.times.size() << "\n";
  return 0;
}

int cmd_nls(const GlobalArgs& g) {
  std::string digest;
  const q1d::ExperimentConfig cfg = load(g, &digest);
  q1d::FourierGrid1D grid(cfg.z_points, cfg.z_length);
  const q1d::PotentialSpec v = cfg.potential();
  const double c_eff = v.empty() ? 0.0 : q1d::coupling_report(v, 1.0, 1.0).c_eff;
  q1d::NLSField phi0 = q1d::initial_field(cfg, grid, c_eff);
  q1d::NLSOptions opts;
  opts.sample_stride =
      std::max(1, static_cast<int>(std::lround(cfg.t_final / cfg.samples / cfg.nls_dt)));
  const auto traj = q1d::nls_evolve(phi0, cfg.t_final, cfg.nls_dt, opts);
  std::vector<std::string> lines = {"t,mass,energy,momentum,sup_norm"};
  for (const auto& f : traj.fields) {
    std::ostringstream os;
    os.precision(17);
    os << f.time << ',' << f.mass() << ',' << f.energy() << ',' << f.momentum()
       << ',' << f.sup_norm();
    lines.push_back(os.str());
  }
  q1d::write_lines((fs::path(g.out_dir) / "nls.csv").string(), lines);

  // hierarchy meters on the run, reported as JSON lines
  std::vector<json> rows;
  q1d::GPResidualOptions gopts;
  gopts.eval_times = {traj.times.back()};
  for (int k : {1, 2}) {
    const auto res = q1d::gp_residual(traj, k, phi0.coupling, gopts);
    json j;
    j["name"] = "gp-residual";
    j["k"] = k;
    j["t"] = res.times.back();
    j["residual"] = res.residuals.back();
    j["sample_dt"] = res.dt_fd;
    j["config"] = digest;
    rows.push_back(j);
  }
  {
    json j;
    j["name"] = "space-time-bound";
    j["eps"] = cfg.st_eps;
    j["value"] = q1d::space_time_bound_report(traj, cfg.st_eps);
    j["config"] = digest;
    rows.push_back(j);
  }
  write_json_lines(fs::path(g.out_dir) / "nls_residuals.jsonl", rows);
  std::cout << "nls run: coupling=" << phi0.coupling
            << " final mass=" << traj.fields.back().mass() << "\n";
  return 0;
}

int cmd_groundstate(const GlobalArgs& g, const std::string& kind) {
  std::string digest;
  const q1d::ExperimentConfig cfg = load(g, &digest);
  if (kind == "nls") {
    q1d::FourierGrid1D grid(cfg.z_points, cfg.z_length);
    const auto res =
        q1d::nls_imaginary_time_ground(grid, 1.0, 0.0, 5e-3, cfg.ground_tol);
    std::cout << "1d trap ground energy = " << res.energy << "\n";
    return 0;
  }
  auto basis =
      q1d::build_basis(cfg.levels, cfg.quad_nodes, cfg.z_points, cfg.z_length);
  const int n = cfg.n_list.front();
  q1d::HamiltonianSpec spec(basis, cfg.potential(),
                            {n, cfg.omega0x, 1.0, cfg.omega0z});
  q1d::ManyBodyState start = q1d::build_initial_data(cfg, spec);
  const auto res = q1d::imaginary_time_ground_nbody(spec, start, cfg.ground_tau,
                                                    cfg.ground_tol);
  q1d::save_state(res.state, (fs::path(g.out_dir) / "ground.bin").string());
  std::cout << "n-body ground energy = " << res.energy << " after "
            << res.iterations << " iterations\n";
  return 0;
}

int cmd_sweep(const GlobalArgs& g, bool assert_trend) {
  std::string digest;
  q1d::ExperimentConfig cfg = load(g, &digest);
  q1d::SweepResult result = q1d::run_convergence_sweep(cfg);
  result.config_digest = digest;
  q1d::write_lines((fs::path(g.out_dir) / "results.jsonl").string(),
                   q1d::sweep_jsonl(result));
  q1d::write_lines((fs::path(g.out_dir) / "gaps.csv").string(),
                   q1d::sweep_csv(result));
  for (const auto& c : result.cells) {
    std::cout << "cell N=" << c.n << " omega=" << c.omega;
    if (c.ok)
      std::cout << " sup_gap=" << c.sup_gap << "\n";
    else
      std::cout << " FAILED: " << c.error << "\n";
  }
  if (assert_trend) {
    for (size_t i = 0; i + 1 < result.cells.size(); ++i) {
      if (!result.cells[i].ok || !result.cells[i + 1].ok) return kExitAssert;
      if (result.cells[i + 1].sup_gap >= result.cells[i].sup_gap) {
        std::cerr << "trend violation: sup_gap did not decrease along the sequence\n";
        return kExitAssert;
      }
    }
  }
  return 0;
}

int cmd_verify(const GlobalArgs& g) {
  std::string digest;
  const q1d::ExperimentConfig cfg = load(g, &digest);
  auto basis =
      q1d::build_basis(cfg.levels, cfg.quad_nodes, cfg.z_points, cfg.z_length);
  const q1d::PotentialSpec v = cfg.potential();
  std::vector<json> rows;
  bool failed = false;
  const int n = cfg.n_list.front();
  const double omega = cfg.omega_for(n, 0);

  for (auto which : {q1d::InequalityName::kCoercivity1,
                     q1d::InequalityName::kCoercivity2,
                     q1d::InequalityName::kCoercivity3}) {
    const auto rep = q1d::check_inequality(which, *basis, omega);
    json j;
    j["name"] = rep.name;
    j["omega"] = omega;
    j["margin"] = rep.margin;
    j["empirical_constant"] = rep.empirical_constant;
    j["config"] = digest;
    rows.push_back(j);
    failed |= rep.margin < -1e-10;
  }
  if (static_cast<long>(basis->size()) * basis->size() <= 2500) {
    const auto rep =
        q1d::check_inequality(q1d::InequalityName::kEsySobolev, *basis, omega, &v);
    json j;
    j["name"] = rep.name;
    j["empirical_constant"] = rep.empirical_constant;
    j["v_l1"] = v.l1_norm();
    j["config"] = digest;
    rows.push_back(j);
  }
  for (int k : {1, 2}) {
    q1d::HamiltonianSpec spec(basis, v, {n, omega, 1.0, 0.0});
    const auto rep = q1d::verify_energy_estimate(spec, k, 16, cfg.seed,
                                                 !cfg.allow_out_of_window);
    json j;
    j["name"] = "energy-estimate";
    j["k"] = k;
    j["n"] = n;
    j["omega"] = omega;
    j["margin"] = rep.margin;
    j["c3"] = rep.c3_used;
    j["in_window"] = rep.in_window;
    j["config"] = digest;
    rows.push_back(j);
    failed |= rep.margin < -1e-8;
  }
  for (int level = 0; level <= 4; ++level) {
    const auto rep = q1d::hermite_linf_ratio(level, omega, 32, cfg.seed);
    json j;
    j["name"] = "projection-ratio";
    j["level"] = level;
    j["omega"] = omega;
    j["sampled_max"] = rep.sampled_max;
    j["kernel_bound"] = rep.kernel_bound;
    j["config"] = digest;
    rows.push_back(j);
  }
  write_json_lines(fs::path(g.out_dir) / "results.jsonl", rows);
  std::cout << "verify: " << rows.size() << " audit records written\n";
  return failed ? kExitAssert : 0;
}

int cmd_rates(const GlobalArgs& g, double kappa) {
  std::string digest;
  const q1d::ExperimentConfig cfg = load(g, &digest);
  q1d::RVec ax(3), az(2), wx(3), wz(2);
  ax << 1.0, 0.0, 0.4;
  az << 1.0, 0.3;
  wx << 0.8, 0.0, 0.6;
  wz << 0.9, -0.43589;
  ax /= ax.norm();
  az /= az.norm();
  wx /= wx.norm();
  wz /= wz.norm();
  const std::vector<double> alphas = {0.4, 0.2, 0.1, 0.05};
  std::vector<json> rows;
  bool failed = false;
  for (int variant = 0; variant < 2; ++variant) {
    q1d::MollifierSpec f;
    if (variant == 0) {
      f.coefs = {1.0};
      f.widths = {1.0};
    } else {
      f.coefs = {2.0, -1.0};
      f.widths = {1.0, 0.6};
    }
    const auto rep =
        q1d::delta_rate_study(f, ax, az, wx, wz, kappa, alphas);
    json j;
    j["name"] = variant == 0 ? "delta-rate-gaussian" : "delta-rate-signed";
    j["kappa"] = kappa;
    j["alphas"] = rep.alphas;
    j["errors"] = rep.errors;
    j["slope"] = rep.slope;
    j["slope_stderr"] = rep.slope_stderr;
    j["config"] = digest;
    rows.push_back(j);
    failed |= rep.slope < kappa;
    std::cout << j["name"].get<std::string>() << ": slope=" << rep.slope << "\n";
  }
  write_json_lines(fs::path(g.out_dir) / "rates.jsonl", rows);
  return failed ? kExitAssert : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-1D focusing boson laboratory"};
  app.require_subcommand(1);
  GlobalArgs g;
  app.add_option("--config", g.config_path, "experiment config file");
  app.add_option("--output-dir", g.out_dir, "output directory");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads for sweeps");

  auto* evolve = app.add_subcommand("evolve", "propagate the N-body state");
  auto* nls = app.add_subcommand("nls", "run the 1D cubic NLS solver");
  auto* ground = app.add_subcommand("groundstate", "imaginary-time ground state");
  std::string ground_kind = "nbody";
  ground->add_option("--kind", ground_kind, "nls | nbody");
  auto* sweep = app.add_subcommand("sweep", "convergence sweep over (N, omega)");
  bool assert_trend = false;
  sweep->add_flag("--assert-trend", assert_trend,
                  "exit 2 unless the factorization gap decreases along the sequence");
  auto* verify = app.add_subcommand("verify", "operator inequality audits");
  auto* rates = app.add_subcommand("rates", "mollifier comparison rate study");
  double kappa = 0.4;
  rates->add_option("--kappa", kappa, "rate exponent in (0, 1/2)");

  CLI11_PARSE(app, argc, argv);
  try {
    fs::create_directories(g.out_dir);
    if (evolve->parsed()) return cmd_evolve(g);
    if (nls->parsed()) return cmd_nls(g);
    if (ground->parsed()) return cmd_groundstate(g, ground_kind);
    if (sweep->parsed()) return cmd_sweep(g, assert_trend);
    if (verify->parsed()) return cmd_verify(g);
    if (rates->parsed()) return cmd_rates(g, kappa);
  } catch (const q1d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
