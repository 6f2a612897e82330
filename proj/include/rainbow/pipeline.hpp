#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/linker.hpp"
#include "rainbow/long_path.hpp"
#include "rainbow/params.hpp"
#include "rainbow/sampler.hpp"

namespace rainbow {

// Oracle only runs in oracle mode, in place of SSets..Linker.
enum class Stage { Sample, SSets, Cover, LongPath, Segments, Linker, Oracle };
constexpr int kStageCount = 7;
const char* to_string(Stage s);

enum class StageStatus { Ok, Failed, Skipped };
const char* to_string(StageStatus s);

struct StageOutcome {
  Stage stage;
  StageStatus status = StageStatus::Skipped;
  int attempts = 0;
  std::string reason;   // empty unless failed
  double seconds = 0;   // only filled when timings are requested
};

struct TrialDiagnostics {
  int s0 = 0;
  int s = 0;
  int s00 = 0;
  std::optional<int> s00_min_distance;  // nullopt: fewer than two vertices or no path
  int max_g2_neighbors_in_s = 0;
  int cover_paths = 0;
  int path_length = 0;
  int path_target = 0;
  int red_count = 0;
  int segments_initial = 0;
  int segments_final = 0;
  int absorptions = 0;
  int bad_step1 = 0;
  int bad_step4 = 0;
  int merges = 0;
  double endpoint_threshold = 0;
  int gamma_r = 0;
  int gamma_arcs = 0;
  int gamma_duplicates = 0;
  int pruned_arcs = 0;
  std::string hamilton_mode;  // "exact" or "heuristic"
  int colors_used = 0;
  size_t exposures = 0;
};

struct TrialFailure {
  Stage stage;
  std::string reason;
};

struct TrialReport {
  uint64_t seed = 0;
  ParamSet params;
  bool precondition_satisfied = false;
  double precondition_bound = 0;
  bool oracle_mode = false;
  std::vector<StageOutcome> stages;  // one per Stage, in pipeline order
  TrialDiagnostics diag;
  std::optional<HamiltonCycleCertificate> certificate;
  std::optional<TrialFailure> failure;

  bool success() const { return certificate.has_value(); }
  const StageOutcome& stage(Stage s) const { return stages[static_cast<int>(s)]; }
};

struct PipelineOptions {
  int cover_retries = 3;
  int long_path_retries = 1;
  int linker_retries = 3;
  std::optional<double> endpoint_threshold;  // replaces the (ε1θ1/180L) ln n family
  LongPathOptions long_path;
  HamiltonOptions hamilton;
  bool oracle_fallback = false;  // n <= 12 only
  long long oracle_budget = -1;
  bool timings = false;
  Parallelism sampler = Parallelism::Serial;
};

// Samples G from `params` with substream "sample" of the seed and runs every stage.
TrialReport find_rainbow_hamilton(const ParamSet& params, uint64_t seed, const PipelineOptions& opt = {});

// Runs the stages on a given sample; `seed` drives the stage substreams only.
// When ledger is given it receives every exposure of the run.
TrialReport run_pipeline(const LayeredSample& sample, uint64_t seed, const PipelineOptions& opt = {},
                         ExposureLedger* ledger = nullptr);

}  // namespace rainbow
