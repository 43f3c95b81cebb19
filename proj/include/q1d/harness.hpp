#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "q1d/common.hpp"
#include "q1d/dynamics.hpp"
#include "q1d/nls.hpp"
#include "q1d/operators.hpp"
#include "q1d/potential.hpp"
#include "q1d/scaling.hpp"

namespace q1d {

enum class InitialMode { kProduct, kProductCutoff, kInteractingGround };

struct ExperimentConfig {
  // [experiment]
  double beta = 1.0 / 3.0;
  std::vector<int> n_list = {2, 3};
  std::string omega_rule = "geometric-middle";  // or "explicit"
  std::vector<double> omega_list;
  double t_final = 1.0;
  double dt = 5e-3;
  int samples = 20;
  std::uint64_t seed = 1;
  InitialMode initial = InitialMode::kProduct;
  double kappa = 0.5;
  bool allow_out_of_window = false;
  double c1 = 1.0;
  double c2 = 1.0;

  // [potential]
  std::vector<GaussianTerm> potential_terms = {{1.0, 0.8, -1}};

  // [basis]
  int levels = 3;
  int quad_nodes = 6;
  int z_points = 16;
  double z_length = 16.0;

  // [nls]
  double nls_dt = 2.5e-4;
  std::string nls_field = "gaussian";  // or "soliton"
  double gaussian_width = 1.0;
  double st_eps = 0.25;  // derivative weight in the space-time meter

  // [ground]  (interacting-ground initial data)
  double omega0x = 4.0;
  double omega0z = 1.0;
  double v0_depth = 0.25;
  double v0_width = 1.0;
  double ground_tau = 0.2;
  double ground_tol = 1e-11;

  int threads = 2;

  PotentialSpec potential() const {
    return PotentialSpec::focusing(potential_terms, beta);
  }
  // In-window confinement strength for a given N under the configured rule.
  double omega_for(int n, int cell_index) const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_hash(const std::string& text);

// Initial z-profile (mass one) selected by the config.
NLSField initial_field(const ExperimentConfig& cfg, const FourierGrid1D& grid,
                       double coupling);

// Product / cutoff / interacting-ground initial N-body state.
ManyBodyState build_initial_data(const ExperimentConfig& cfg,
                                 const HamiltonianSpec& spec);

struct SweepRecord {
  int n = 0;
  double omega = 0.0;
  double beta = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double vE = 0.0;
  bool in_window = true;
  double t = 0.0;
  double gap_trace = 0.0;
  double gap_hs = 0.0;
  double gap_dk = 0.0;
  // distance to |h><h| (x) Tr_x gamma, the limiting product structure
  double limit_structure_gap = 0.0;
  double sector_w1 = 0.0;  // aggregated one-excited weight
  double sector_w2 = 0.0;
  double energy1 = 0.0;
  double norm_drift = 0.0;
};

struct CellSummary {
  int n = 0;
  double omega = 0.0;
  double sup_gap = 0.0;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<CellSummary> cells;
  std::string config_digest;
  std::string code_version;
};

SweepResult run_convergence_sweep(const ExperimentConfig& cfg);

std::vector<std::string> sweep_jsonl(const SweepResult& result);
std::vector<std::string> sweep_csv(const SweepResult& result);

}  // namespace q1d
