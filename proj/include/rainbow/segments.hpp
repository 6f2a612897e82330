#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/long_path.hpp"
#include "rainbow/sampler.hpp"

namespace rainbow {

enum class EndType : uint8_t { None = 0, A = 1, B = 2 };

struct Segment {
  std::vector<Vertex> vertices;  // front() is the A endpoint, back() the B endpoint
  std::vector<Color> colors;
  bool alive = true;
};

struct EndpointThresholds {
  double t180 = 0;   // Steps 1 and 4
  double t200 = 0;   // final check after Step 5
  double t1800 = 0;  // slack lost to removed endpoints
  bool overridden = false;
};

EndpointThresholds endpoint_thresholds(const ParamSet& ps, int L, std::optional<double> override_value = {});
// 1/180 - 1/1800 == 1/200, checked in exact integer arithmetic
bool threshold_relation_exact();

struct SegmentStats {
  int r_initial = 0;
  int r_after_absorb = 0;
  int r_final = 0;
  int bad_step1 = 0;
  int bad_step4 = 0;
  int merges = 0;
  int absorptions = 0;
  int discarded = 0;
  int recheck_rounds = 0;
};

class PathTooShort : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Block {
  std::vector<int> segs;                          // segment ids in chain order
  std::vector<std::pair<Vertex, Vertex>> facing;  // facing[i] joins segs[i] and segs[i+1]
  Vertex first = 0, last = 0;                     // extreme endpoints
  bool cyclic = false;
};

struct SegmentSystem {
  int n = 0;
  int L = 0;
  int intervals = 0;  // original k
  std::vector<Vertex> path;
  std::vector<Color> path_colors;
  std::vector<int> pos;            // position on P or -1
  std::vector<int> interval_of;    // original interval index or -1
  std::vector<Segment> segs;
  std::vector<int> seg_of_end;     // segment id for current endpoints, else -1
  std::vector<Vertex> joint;       // facing endpoint joined by a P-edge, 0 if none
  std::vector<uint8_t> type;       // EndType
  std::vector<uint8_t> in_b1;
  std::vector<uint8_t> interval_used;
  std::vector<int> count_b1;       // d1+(v; B1), -1 when unexposed
  std::vector<int> count_a2;       // d1+(b; A2), -1 when unexposed
  std::vector<int> count_final;    // d1+ toward the final opposite set, -1 when unexposed
  std::vector<Vertex> discarded;
  EndpointThresholds thr;
  SegmentStats stats;
  int stage = 1;

  Vertex a_end(int id) const { return segs[id].vertices.front(); }
  Vertex b_end(int id) const { return segs[id].vertices.back(); }
  std::vector<int> live() const;
  int live_count() const;
  std::vector<Vertex> endpoints(EndType t) const;
  std::vector<Block> blocks() const;
  bool good_b1(Vertex v) const { return count_b1[v] >= 0 && count_b1[v] >= thr.t180; }
};

SegmentSystem split_into_segments(const RainbowPath& p, int L, int n, const EndpointThresholds& thr);

enum class ExposeSide { TowardB, TowardA };

// Step 1 (TowardB): d1+(v;B1) for every vertex on a segment. Step 4 (TowardA):
// d1+(b;A2) for every B endpoint. Returns the number of bad endpoints.
int expose_endpoint_degrees(const LayeredSample& s, SegmentSystem& sys, ExposeSide side, ExposureLedger& ledger);

struct Leftover {
  std::vector<Vertex> vertices;
  std::vector<Color> colors;
};

enum class AbsorbFailureReason { NoUsableG3Arc, ColorExhausted, NoSeparatedHost };
const char* to_string(AbsorbFailureReason r);

struct AbsorbFailure {
  int item;
  AbsorbFailureReason reason;
};

std::variant<SegmentSystem, AbsorbFailure> absorb_leftovers(SegmentSystem sys, const std::vector<Leftover>& items,
                                                            const LayeredSample& s, UsedColors& used,
                                                            ExposureLedger& ledger);

enum class MergeFailureReason { SingleSegmentBlock, TwoSegmentBlock, BadBlockExtreme, NoProgress };
const char* to_string(MergeFailureReason r);

struct MergeFailure {
  Vertex vertex;
  MergeFailureReason reason;
};

// Step 5. Bad facing endpoints are merged away with a neighbouring segment; then
// counts are re-taken against the final endpoint sets with the 200 threshold and
// merging repeats until stable.
std::variant<SegmentSystem, MergeFailure> merge_bad_endpoints(SegmentSystem sys, const LayeredSample& s,
                                                              ExposureLedger& ledger);

// Structural checks: disjointness, endpoint types, joints are P-edges of equal type,
// colors rainbow and outside C1, no cyclic blocks, extremes of type A; with
// require_cover also that every vertex of [n] is on a live segment.
std::vector<std::string> check_segment_system(const SegmentSystem& sys, const ParamSet* ps, bool require_cover);

}  // namespace rainbow
