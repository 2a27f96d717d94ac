#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "munu/common.hpp"

namespace munu::report {

using Json = nlohmann::json;

Json to_json(const PrincipleReport& r, std::optional<std::uint64_t> seed = std::nullopt);
Json to_json(const Verdict& v);

// {command, answer, reports[, verdict]} as published in schema/report.schema.json.
Json envelope(const std::string& command, Json answer, std::vector<Json> reports,
              std::optional<Json> verdict = std::nullopt);

// Two-space indented, trailing newline; keys are sorted so output is stable.
std::string render(const Json& j);

}  // namespace munu::report
