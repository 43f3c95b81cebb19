#include "q1d/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "q1d/io.hpp"
#include "q1d/marginals.hpp"

namespace q1d {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value '" + s + "' for " + key);
  }
}

int to_int(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  if (v != std::floor(v))
    throw ConfigError("config: expected integer for " + key);
  return static_cast<int>(v);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::vector<double> depths = {1.0}, widths = {0.8};
  std::vector<int> signs = {-1};
  bool potential_touched = false;

  std::string section = "experiment";
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: malformed section " + line);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "potential" &&
          section != "basis" && section != "nls" && section != "ground")
        throw ConfigError("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;

    if (full == "experiment.beta") cfg.beta = to_double(val, full);
    else if (full == "experiment.n_list") {
      cfg.n_list.clear();
      for (const auto& v : split_list(val)) cfg.n_list.push_back(to_int(v, full));
    } else if (full == "experiment.omega_rule") {
      if (val != "geometric-middle" && val != "explicit")
        throw ConfigError("config: omega_rule must be geometric-middle or explicit");
      cfg.omega_rule = val;
    } else if (full == "experiment.omega_list") {
      cfg.omega_list.clear();
      for (const auto& v : split_list(val)) cfg.omega_list.push_back(to_double(v, full));
    } else if (full == "experiment.t_final") cfg.t_final = to_double(val, full);
    else if (full == "experiment.dt") cfg.dt = to_double(val, full);
    else if (full == "experiment.samples") cfg.samples = to_int(val, full);
    else if (full == "experiment.seed") cfg.seed = static_cast<std::uint64_t>(to_double(val, full));
    else if (full == "experiment.initial") {
      if (val == "product") cfg.initial = InitialMode::kProduct;
      else if (val == "product-cutoff") cfg.initial = InitialMode::kProductCutoff;
      else if (val == "interacting-ground") cfg.initial = InitialMode::kInteractingGround;
      else throw ConfigError("config: unknown initial mode " + val);
    } else if (full == "experiment.kappa") cfg.kappa = to_double(val, full);
    else if (full == "experiment.allow_out_of_window")
      cfg.allow_out_of_window = val == "true" || val == "1";
    else if (full == "experiment.c1") cfg.c1 = to_double(val, full);
    else if (full == "experiment.c2") cfg.c2 = to_double(val, full);
    else if (full == "experiment.threads") cfg.threads = to_int(val, full);
    else if (full == "potential.depths") {
      depths.clear();
      for (const auto& v : split_list(val)) depths.push_back(to_double(v, full));
      potential_touched = true;
    } else if (full == "potential.widths") {
      widths.clear();
      for (const auto& v : split_list(val)) widths.push_back(to_double(v, full));
      potential_touched = true;
    } else if (full == "potential.signs") {
      signs.clear();
      for (const auto& v : split_list(val)) signs.push_back(to_int(v, full));
      potential_touched = true;
    } else if (full == "basis.levels") cfg.levels = to_int(val, full);
    else if (full == "basis.quad_nodes") cfg.quad_nodes = to_int(val, full);
    else if (full == "basis.z_points") cfg.z_points = to_int(val, full);
    else if (full == "basis.z_length") cfg.z_length = to_double(val, full);
    else if (full == "nls.dt") cfg.nls_dt = to_double(val, full);
    else if (full == "nls.field") {
      if (val != "gaussian" && val != "soliton")
        throw ConfigError("config: nls field must be gaussian or soliton");
      cfg.nls_field = val;
    } else if (full == "nls.gaussian_width") cfg.gaussian_width = to_double(val, full);
    else if (full == "nls.st_eps") cfg.st_eps = to_double(val, full);
    else if (full == "ground.omega0x") cfg.omega0x = to_double(val, full);
    else if (full == "ground.omega0z") cfg.omega0z = to_double(val, full);
    else if (full == "ground.v0_depth") cfg.v0_depth = to_double(val, full);
    else if (full == "ground.v0_width") cfg.v0_width = to_double(val, full);
    else if (full == "ground.tau") cfg.ground_tau = to_double(val, full);
    else if (full == "ground.tol") cfg.ground_tol = to_double(val, full);
    else throw ConfigError("config: unknown key " + full);
  }

  if (potential_touched || true) {
    if (depths.size() != widths.size() || depths.size() != signs.size())
      throw ConfigError("config: potential lists must have equal lengths");
    cfg.potential_terms.clear();
    for (size_t i = 0; i < depths.size(); ++i)
      cfg.potential_terms.push_back({depths[i], widths[i], signs[i]});
  }
  // fail early on inconsistent potentials
  try {
    (void)cfg.potential();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.omega_rule == "explicit" && cfg.omega_list.size() != cfg.n_list.size())
    throw ConfigError("config: omega_list must match n_list for explicit rule");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string config_hash(const std::string& text) { return fnv1a_hex(text); }

double ExperimentConfig::omega_for(int n, int cell_index) const {
  if (omega_rule == "explicit") return omega_list.at(static_cast<size_t>(cell_index));
  const double expo =
      0.5 * (v1_exponent(beta) + std::min(v2_exponent(beta).value, vE_exponent(beta)));
  const double exact = std::pow(n, expo);
  const double rounded = std::max(1.0, std::round(exact));
  const OmegaWindow win = omega_window(beta, n, c1, c2, WindowMode::kDynamics);
  return win.contains(rounded) ? rounded : exact;
}

NLSField initial_field(const ExperimentConfig& cfg, const FourierGrid1D& grid,
                       double coupling) {
  if (cfg.nls_field == "soliton") return soliton_field(grid, coupling);
  return gaussian_field(grid, coupling, cfg.gaussian_width);
}

ManyBodyState build_initial_data(const ExperimentConfig& cfg,
                                 const HamiltonianSpec& spec) {
  const PotentialSpec v = cfg.potential();
  const double c_eff = v.empty() ? 0.0 : coupling_report(v, 1.0, 1.0).c_eff;
  NLSField phi0 = initial_field(cfg, spec.basis().z(), c_eff);
  const Vec u = spec.basis().separable_coeffs(0, phi0.coeffs());
  ManyBodyState psi =
      ManyBodyState::product(spec.basis_ptr(), spec.particles(), u);
  psi.normalize();
  switch (cfg.initial) {
    case InitialMode::kProduct:
      return psi;
    case InitialMode::kProductCutoff:
      return spectral_cutoff(spec, psi, cfg.kappa);
    case InitialMode::kInteractingGround: {
      const PotentialSpec v0 = PotentialSpec::repulsive(
          {{cfg.v0_depth, cfg.v0_width, +1}}, cfg.beta);
      HamiltonianSpec prep(spec.basis_ptr(), v0,
                           {spec.particles(), cfg.omega0x, 1.0, cfg.omega0z});
      return imaginary_time_ground_nbody(prep, psi, cfg.ground_tau, cfg.ground_tol)
          .state;
    }
  }
  throw ConfigError("build_initial_data: unknown mode");
}

namespace {

struct CellOutput {
  CellSummary summary;
  std::vector<SweepRecord> records;
};

CellOutput run_cell(const ExperimentConfig& cfg, int cell_index, int n,
                    double omega) {
  CellOutput out;
  out.summary.n = n;
  out.summary.omega = omega;
  try {
    auto basis = build_basis(cfg.levels, cfg.quad_nodes, cfg.z_points, cfg.z_length);
    const PotentialSpec v = cfg.potential();
    HamiltonianSpec spec(basis, v, {n, omega, 1.0, 0.0});
    ManyBodyState psi0 = build_initial_data(cfg, spec);

    const double sample_dt = cfg.t_final / cfg.samples;
    const int stride = std::max(1, static_cast<int>(std::lround(sample_dt / cfg.dt)));
    EvolveOptions eopts;
    eopts.sample_stride = stride;
    NBodyTrajectory traj = evolve_nbody(spec, psi0, cfg.t_final, cfg.dt, eopts);

    const double c_eff = v.empty() ? 0.0 : coupling_report(v, 1.0, 1.0).c_eff;
    NLSField phi0 = initial_field(cfg, basis->z(), c_eff);
    const double actual_sample = stride * cfg.dt;
    const int nls_stride =
        std::max(1, static_cast<int>(std::lround(actual_sample / cfg.nls_dt)));
    if (std::abs(nls_stride * cfg.nls_dt - actual_sample) > 1e-9)
      throw ConfigError("sweep: nls.dt must divide the sample spacing");
    NLSOptions nopts;
    nopts.sample_stride = nls_stride;
    NLSTrajectory bench = nls_evolve(phi0, cfg.t_final, cfg.nls_dt, nopts);

    const OmegaWindow win =
        omega_window(cfg.beta, n, cfg.c1, cfg.c2, WindowMode::kDynamics);
    SweepRecord proto;
    proto.n = n;
    proto.omega = omega;
    proto.beta = cfg.beta;
    proto.v1 = v1_exponent(cfg.beta);
    proto.v2 = v2_exponent(cfg.beta).value;
    proto.vE = vE_exponent(cfg.beta);
    proto.in_window = win.contains(omega);

    double sup_gap = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const double t = traj.times[i];
      // matching benchmark sample
      size_t bi = bench.times.size();
      for (size_t j = 0; j < bench.times.size(); ++j)
        if (std::abs(bench.times[j] - t) < 1e-9) {
          bi = j;
          break;
        }
      if (bi == bench.times.size())
        throw ConfigError("sweep: benchmark sampling misaligned");
      SweepRecord rec = proto;
      rec.t = t;
      DensityMatrix g1 = reduce_marginal(traj.states[i], 1);
      const Vec phi_coeffs = bench.fields[bi].coeffs();
      rec.gap_trace = factorization_gap(g1, phi_coeffs);
      const Vec bvec = basis->separable_coeffs(0, phi_coeffs);
      DensityMatrix benchdm{1, basis, Mat(bvec * bvec.adjoint())};
      rec.gap_hs = hs_distance(g1, benchdm);
      rec.gap_dk = dk_metric(g1, benchdm);
      // distance to the x-ground product structure with its own z part
      const ReducedZDensity gz = trace_x(g1);
      Mat structured = Mat::Zero(g1.kernel.rows(), g1.kernel.cols());
      const int mz = basis->z_size();
      for (int iz = 0; iz < mz; ++iz)
        for (int jz = 0; jz < mz; ++jz)
          structured(basis->index(0, iz), basis->index(0, jz)) =
              gz.kernel(iz, jz);
      rec.limit_structure_gap = trace_distance(g1.kernel, structured);
      const SectorWeights w = sector_weights(traj.states[i]);
      rec.sector_w1 = w.by_excited_count.count(1) ? w.by_excited_count.at(1) : 0.0;
      rec.sector_w2 = w.by_excited_count.count(2) ? w.by_excited_count.at(2) : 0.0;
      rec.energy1 = traj.energy_moment1[i];
      rec.norm_drift = traj.norm_drift[i];
      sup_gap = std::max(sup_gap, rec.gap_trace);
      out.records.push_back(rec);
    }
    out.summary.sup_gap = sup_gap;
    out.summary.ok = true;
  } catch (const std::exception& e) {
    out.summary.ok = false;
    out.summary.error = e.what();
  }
  (void)cell_index;
  return out;
}

}  // namespace

SweepResult run_convergence_sweep(const ExperimentConfig& cfg) {
  const int cells = static_cast<int>(cfg.n_list.size());
  std::vector<std::pair<int, double>> plan;
  for (int c = 0; c < cells; ++c) {
    const int n = cfg.n_list[static_cast<size_t>(c)];
    const double omega = cfg.omega_for(n, c);
    const OmegaWindow win =
        omega_window(cfg.beta, n, cfg.c1, cfg.c2, WindowMode::kDynamics);
    if (!win.contains(omega) && !cfg.allow_out_of_window)
      throw ConfigError("sweep: (N=" + std::to_string(n) +
                        ", omega=" + std::to_string(omega) +
                        ") is outside the window and not flagged");
    plan.emplace_back(n, omega);
  }

  std::vector<CellOutput> outputs(static_cast<size_t>(cells));
  const int workers = std::max(1, std::min(cfg.threads, cells));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        const int c = next.fetch_add(1);
        if (c >= cells) return;
        outputs[static_cast<size_t>(c)] =
            run_cell(cfg, c, plan[static_cast<size_t>(c)].first,
                     plan[static_cast<size_t>(c)].second);
      }
    });
  for (auto& t : pool) t.join();

  SweepResult result;
  result.code_version = version_string();
  for (auto& o : outputs) {
    result.cells.push_back(o.summary);
    for (auto& r : o.records) result.records.push_back(r);
  }
  return result;
}

std::vector<std::string> sweep_jsonl(const SweepResult& result) {
  std::vector<std::string> lines;
  for (const auto& c : result.cells) {
    nlohmann::json j;
    j["type"] = "cell";
    j["n"] = c.n;
    j["omega"] = c.omega;
    j["sup_gap"] = c.sup_gap;
    j["ok"] = c.ok;
    if (!c.ok) j["error"] = c.error;
    j["config"] = result.config_digest;
    j["version"] = result.code_version;
    lines.push_back(j.dump());
  }
  for (const auto& r : result.records) {
    nlohmann::json j;
    j["type"] = "sample";
    j["n"] = r.n;
    j["omega"] = r.omega;
    j["beta"] = r.beta;
    j["v1"] = r.v1;
    j["v2"] = r.v2;
    j["vE"] = r.vE;
    j["in_window"] = r.in_window;
    j["t"] = r.t;
    j["gap_trace"] = r.gap_trace;
    j["gap_hs"] = r.gap_hs;
    j["gap_dk"] = r.gap_dk;
    j["limit_structure_gap"] = r.limit_structure_gap;
    j["sector_w1"] = r.sector_w1;
    j["sector_w2"] = r.sector_w2;
    j["energy1"] = r.energy1;
    j["norm_drift"] = r.norm_drift;
    j["config"] = result.config_digest;
    j["version"] = result.code_version;
    lines.push_back(j.dump());
  }
  return lines;
}

std::vector<std::string> sweep_csv(const SweepResult& result) {
  std::vector<std::string> lines;
  lines.push_back("t,N,omega,beta,quantity,value");
  auto row = [&](const SweepRecord& r, const char* q, double v) {
    std::ostringstream os;
    os.precision(17);
    os << r.t << ',' << r.n << ',' << r.omega << ',' << r.beta << ',' << q << ','
       << v;
    lines.push_back(os.str());
  };
  for (const auto& r : result.records) {
    row(r, "gap_trace", r.gap_trace);
    row(r, "gap_hs", r.gap_hs);
    row(r, "gap_dk", r.gap_dk);
    row(r, "limit_structure_gap", r.limit_structure_gap);
    row(r, "sector_w1", r.sector_w1);
    row(r, "sector_w2", r.sector_w2);
    row(r, "energy_moment1", r.energy1);
    row(r, "norm_drift", r.norm_drift);
  }
  return lines;
}

}  // namespace q1d
