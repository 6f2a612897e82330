#include "rainbow/exposure.hpp"

#include "rainbow/random.hpp"

namespace rainbow {

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::OutDegree: return "out-degree";
    case Quantity::ArcsTowardSet: return "arcs-toward-set";
    case Quantity::OutListFirstHalf: return "out-list-first-half";
    case Quantity::OutListSecondHalf: return "out-list-second-half";
    case Quantity::ArcProbe: return "arc-probe";
    case Quantity::G2Neighborhood: return "g2-neighborhood";
    case Quantity::G3OutArcs: return "g3-out-arcs";
    case Quantity::CountToward: return "count-toward";
    case Quantity::GammaColors: return "gamma-colors";
    case Quantity::GammaLocations: return "gamma-locations";
  }
  return "?";
}

size_t ExposureLedger::KeyHash::operator()(const ExposureKey& k) const {
  uint64_t a = (static_cast<uint64_t>(k.kind) << 40) | (static_cast<uint64_t>(k.layer) << 32) |
               (static_cast<uint64_t>(k.tag) << 16);
  uint64_t b = (static_cast<uint64_t>(static_cast<uint32_t>(k.u)) << 32) | static_cast<uint32_t>(k.v);
  return static_cast<size_t>(hash_combine(a, b));
}

static std::string describe(const ExposureKey& k) {
  return std::string(quantity_name(k.kind)) + " layer " + std::to_string(k.layer) + " tag " +
         std::to_string(k.tag) + " (" + std::to_string(k.u) + "," + std::to_string(k.v) + ")";
}

void ExposureLedger::reveal(const ExposureKey& key, int64_t value) {
  auto [it, fresh] = values_.emplace(key, value);
  if (!fresh && enforce_) throw ExposureViolation("revealed twice: " + describe(key));
  if (!fresh) it->second = value;
  log_.push_back({log_.size(), key, value, stage_});
}

bool ExposureLedger::touch(const ExposureKey& key, int64_t value) {
  auto [it, fresh] = values_.emplace(key, value);
  if (fresh) log_.push_back({log_.size(), key, value, stage_});
  return fresh;
}

void ExposureLedger::require(const ExposureKey& key) const {
  if (enforce_ && !values_.count(key)) throw ExposureViolation("read before reveal: " + describe(key));
}

bool ExposureLedger::revealed(const ExposureKey& key) const { return values_.count(key) > 0; }

std::optional<int64_t> ExposureLedger::value(const ExposureKey& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

size_t ExposureLedger::count(Quantity kind) const {
  size_t c = 0;
  for (const auto& [k, v] : values_)
    if (k.kind == kind) ++c;
  return c;
}

void ExposureLedger::restore(const Snapshot& s) {
  while (log_.size() > s.log_size) {
    values_.erase(log_.back().key);
    log_.pop_back();
  }
}

}  // namespace rainbow
