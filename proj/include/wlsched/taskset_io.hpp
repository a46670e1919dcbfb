#pragma once

#include "wlsched/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace wlsched {

/// Malformed task-set document. `location` is "line N" for syntax errors
/// and a field path such as "tasks[1].gamma[0]" for content errors.
class ParseError : public InvalidInput {
public:
    ParseError(std::string location, const std::string& message);
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// Task-set document grammar (JSON):
///
///   { "processors": <integer >= 1>,
///     "tasks": [ { "name": <string>, "C": <integer >= 1>, "T": <integer >= 1>,
///                  "gamma": [ <rate>, ... ] }, ... ] }
///
/// where <rate> is a JSON string holding a decimal ("1.5") or a fraction
/// ("3/2"); JSON numbers are rejected so no rate passes through binary
/// floating point. Unknown keys are rejected. Every gamma list must have
/// exactly `processors` entries and be work-limited.
TaskSystem parse_taskset_text(std::string_view text);
TaskSystem parse_taskset(const std::filesystem::path& path);

/// Inverse of parse_taskset_text; rates are written as exact decimals when
/// possible and as "p/q" otherwise.
std::string serialize_taskset(const TaskSystem& system);

}  // namespace wlsched
