#pragma once

#include <string>

#include <json.hpp>

#include "rainbow/params.hpp"
#include "rainbow/pipeline.hpp"

namespace rainbow {

constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json params_json(const ParamSet& ps);
nlohmann::ordered_json report_json(const TrialReport& r);
// pretty-printed with a trailing newline
std::string dump(const nlohmann::ordered_json& j);

}  // namespace rainbow
