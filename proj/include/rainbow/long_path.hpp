#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/cover.hpp"
#include "rainbow/dangerous_sets.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"

namespace rainbow {

struct RainbowPath {
  std::vector<Vertex> vertices;
  std::vector<Color> colors;
};

struct RedReport {
  int count = 0;          // red vertices overall
  int on_path = 0;        // red vertices still on the final path
  std::vector<Vertex> red;
};

struct LongPathOptions {
  std::optional<double> stop_below;  // stop once |U| < this; default n/(2 ∛ln n)
  std::optional<int> min_vertices;   // success target; default n - n/∛ln n
};

struct LongPathResult {
  RainbowPath path;
  RedReport red;
  std::vector<Vertex> untouched;  // U_T
  std::vector<Vertex> v2;         // vertices available to the walk
  int target = 0;
  double stop_below = 0;
  bool degenerate = false;        // stop threshold >= |V2|, ran until U was empty
  int steps = 0;
  int restarts = 0;
};

struct LongPathFailure {
  int final_length;  // vertices on the path
  int red_count;
  int target;
};

double default_stop_below(int n);
int default_path_target(int n);

// The red-vertex walk. Colors of the final path are added to `used`; on failure
// `used` is left unchanged.
std::variant<LongPathResult, LongPathFailure> build_long_path(const LayeredSample& s, const DangerousSets& ds,
                                                              const PathCover& cover, UsedColors& used,
                                                              ExposureLedger& ledger, const RandomSource& rng,
                                                              const LongPathOptions& opt = {});

struct RedDiagnostic {
  int observed;
  double bound;
  bool within;
};

RedDiagnostic red_fraction_diagnostic(const RedReport& r, int n);

}  // namespace rainbow
