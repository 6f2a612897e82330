#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/dangerous_sets.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

struct CoverPath {
  std::vector<Vertex> vertices;
  std::vector<Color> colors;  // colors[i] on {vertices[i], vertices[i+1]}
  bool s00_phase = false;
};

struct PathCover {
  std::vector<CoverPath> paths;
  size_t covered = 0;  // vertices of S on the paths
  size_t colors_used() const;
};

enum class CoverFailureReason { NoDisjointExtension, NoFreshColors, DegreeTooLow };
const char* to_string(CoverFailureReason r);

struct CoverFailure {
  Vertex vertex;
  CoverFailureReason reason;
};

// Greedy cover of S: S ∩ S00 first with paths of length 2-4, then cherries.
// Without an order source vertices are handled in ascending id; with one, each
// phase is processed in a random order (used by retries). Colors are taken from
// and added to `used`; on failure `used` is left as it was on entry.
std::variant<PathCover, CoverFailure> cover_dangerous(const ColoredGraph& g2, const DangerousSets& ds,
                                                      UsedColors& used, ExposureLedger& ledger,
                                                      std::optional<RandomSource> order = std::nullopt);

// Checks every PathCover invariant; returns human-readable violations.
std::vector<std::string> check_cover(const ColoredGraph& g2, const DangerousSets& ds, const PathCover& pc);

}  // namespace rainbow
