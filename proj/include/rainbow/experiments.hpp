#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/params.hpp"
#include "rainbow/pipeline.hpp"

namespace rainbow {

// How a grid cell turns into a ParamSet.
//   Derived: (n, a = ε, b = θ) through derive_parameters.
//   MergedP: (n, a = c, b = f) with merged p = c ln n / n and κ = round(f n).
// Explicit p1..p3 / κ overrides, when set, are applied on top of either.
enum class CellMode { Derived, MergedP };

struct SweepConfig {
  CellMode mode = CellMode::Derived;
  std::vector<int> n;
  std::vector<double> a;  // ε or c
  std::vector<double> b;  // θ or f
  std::optional<std::array<double, 3>> p_override;
  std::optional<int> kappa_override;
  std::optional<int> L_override;
  int trials = 1;
  uint64_t base_seed = 1;
  int jobs = 1;
  PipelineOptions pipeline;
  bool oracle_crosscheck = false;            // cells with n <= 12
  std::optional<double> time_budget_seconds; // stop launching trials past it

  // throws ParameterError on an empty grid or trials < 1
  void validate() const;
};

struct Cell {
  int n;
  double a, b;
};

ParamSet cell_params(const SweepConfig& cfg, const Cell& c);
std::vector<Cell> grid(const SweepConfig& cfg);

// base ⊕ cell ⊕ trial, with the cell entering only through its own values
uint64_t trial_seed(uint64_t base, const Cell& c, int trial);

struct SweepRow {
  Cell cell;
  ParamSet params;
  int trials = 0;      // requested
  int completed = 0;   // run before truncation
  int successes = 0;
  std::array<int, kStageCount> failures{};  // by stage
  int oracle_checked = 0;
  int oracle_exists = 0;
  double mean_s0 = 0, mean_s = 0, mean_s00 = 0, mean_red = 0, mean_path = 0;
  double mean_bad_step1 = 0, mean_bad_step4 = 0, mean_merges = 0, mean_segments = 0;
  std::array<double, kStageCount> mean_seconds{};
  double success_fraction() const { return completed ? static_cast<double>(successes) / completed : 0.0; }
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order
  bool truncated = false;
  std::string truncation_reason;
};

SweepResult monte_carlo(const SweepConfig& cfg);

// Fixed column list, also printed by `rhc mc --help`.
extern const char* const kSweepCsvColumns;
void write_sweep_csv(std::ostream& out, const SweepResult& r, bool timings);
void write_sweep_json(std::ostream& out, const SweepResult& r, bool timings);

struct Measurement {
  std::string name;
  double value;
  double bound;
  bool within;
  bool reached = true;  // false when the quantity needs a stage the trial did not reach
};

struct DiagTrial {
  int trial;
  uint64_t seed;
  std::vector<Measurement> m;
};

struct DiagSummary {
  std::string name;
  int reached = 0;
  int violated = 0;
  double violation_rate() const { return reached ? static_cast<double>(violated) / reached : 0.0; }
};

struct DiagResult {
  ParamSet params;
  std::vector<DiagTrial> trials;
  std::vector<DiagSummary> summary;
};

struct DiagConfig {
  SweepConfig sweep;  // first cell of the grid is used
};

// Per-trial measurements against their bounds. Order of measurements:
// S0, S, max_degree, sparse_grown_sets, S00, S00_distance, G2_nbrs_in_S,
// red_vertices, bad_step1, bad_step4.
DiagResult diagnostics_run(const DiagConfig& cfg);
std::vector<Measurement> measure_sample(const LayeredSample& s, const TrialReport* report);

// Largest e(S')/|S'| over S0 and every prefix S0 + first t absorbed vertices,
// counting distinct ordered pairs spanned in any D_i.
struct SparseCheck {
  double worst_ratio = 0;
  int worst_size = 0;
  bool within = true;
  int sets_checked = 0;
};
SparseCheck sparse_grown_sets(const LayeredSample& s, const std::vector<Vertex>& s0,
                              const std::vector<Vertex>& absorbed);

void write_diag_csv(std::ostream& out, const DiagResult& r);
void write_diag_json(std::ostream& out, const DiagResult& r);

struct TailCheck {
  long long m;
  double q;
  long long k;          // floor(mq/9)
  double exact;         // P(Bin(m,q) <= k)
  double log_exact;
  double bound;         // exp(-0.533 mq)
  double log_bound;
  bool holds;
  bool in_scope;        // k >= 1: the event is not the trivial {0}
};

// exact lower tail by log-space recursion over the pmf; q must lie in (0,1)
TailCheck binomial_tail_check(long long m, double q);

// smallest mq on the sweep from which the bound holds at every later point,
// nullopt when it fails at the last point
std::optional<double> tail_scope_start(double q, const std::vector<long long>& m_values);

struct CouplingStats {
  int r;
  double q;                    // 130 L ln n / n
  int trials;
  double max_arc_marginal;     // max over arcs of P(arc in E3 ∪ F2)
  double mean_conflicts;       // mean |E3 ∪ F2|
  double containment_rate;     // fraction of trials with E3 ∪ F2 ⊆ independent D_{r,q}
  bool marginal_dominated;     // max_arc_marginal <= q
};

CouplingStats coupling_diagnostic(int r, int delta, int c1, double f2, int L, int n, int trials, uint64_t seed);

}  // namespace rainbow
