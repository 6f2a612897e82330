#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

// What kind of random quantity was looked at. Layer is 1..3; layer+3 means the
// full layer D_i° rather than its class restriction D_i.
enum class Quantity : uint8_t {
  OutDegree,        // d_i^+(v)
  ArcsTowardSet,    // locations of v's D_i arcs whose head is in the dangerous set
  OutListFirstHalf,
  OutListSecondHalf,
  ArcProbe,         // membership of (u,v) in a layer
  G2Neighborhood,   // edges of G2 at v with colors
  G3OutArcs,        // D3 out-arcs of a leftover end
  CountToward,      // number of D1 arcs from v into an endpoint set; tag = stage
  GammaColors,      // colors of v's Γ generations
  GammaLocations,   // heads of v's Γ generations
};

const char* quantity_name(Quantity q);

struct ExposureKey {
  Quantity kind;
  uint8_t layer = 0;
  uint16_t tag = 0;
  Vertex u = 0;
  Vertex v = 0;
  bool operator==(const ExposureKey&) const = default;
};

struct ExposureEvent {
  uint64_t seq;
  ExposureKey key;
  int64_t value;
  uint16_t stage;
};

class ExposureViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#ifndef RAINBOW_ENFORCE_EXPOSURE
#define RAINBOW_ENFORCE_EXPOSURE 1
#endif

class ExposureLedger {
 public:
  explicit ExposureLedger(bool enforce = RAINBOW_ENFORCE_EXPOSURE != 0) : enforce_(enforce) {}

  // Strict reveal: a second reveal of the same key is an error.
  void reveal(const ExposureKey& key, int64_t value = 0);
  // Idempotent reveal for quantities that are legitimately consulted repeatedly
  // (probes, neighborhoods). Returns true when the key was new.
  bool touch(const ExposureKey& key, int64_t value = 0);
  // Reading something that was never revealed is an error when enforcement is on.
  void require(const ExposureKey& key) const;

  bool revealed(const ExposureKey& key) const;
  std::optional<int64_t> value(const ExposureKey& key) const;

  void set_stage(uint16_t stage) { stage_ = stage; }
  uint16_t stage() const { return stage_; }
  bool enforcing() const { return enforce_; }
  void set_enforcing(bool on) { enforce_ = on; }

  const std::vector<ExposureEvent>& log() const { return log_; }
  size_t size() const { return values_.size(); }
  size_t count(Quantity kind) const;

  struct Snapshot {
    size_t log_size;
  };
  Snapshot snapshot() const { return {log_.size()}; }
  // Forgets everything revealed after the snapshot (used when a stage is retried
  // with a fresh substream).
  void restore(const Snapshot& s);

 private:
  struct KeyHash {
    size_t operator()(const ExposureKey& k) const;
  };
  bool enforce_;
  uint16_t stage_ = 0;
  std::unordered_map<ExposureKey, int64_t, KeyHash> values_;
  std::vector<ExposureEvent> log_;
};

}  // namespace rainbow
