#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace examsim {

using Timestamp =
    std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

// Injected time and identifier sources. Replay mode swaps both for
// deterministic implementations so transcripts are byte-stable.
using Clock = std::function<Timestamp()>;
using IdSource = std::function<std::string()>;

Clock system_clock();

// Starts at `start` and advances by `step` on every call.
Clock stepping_clock(Timestamp start, std::chrono::milliseconds step);

// 2024-01-01T00:00:00Z, the fixed epoch used by replay.
Timestamp replay_epoch();

// ISO-8601 UTC with millisecond precision, e.g. 2024-01-01T00:00:00.000Z
std::string format_utc(Timestamp t);
std::optional<Timestamp> parse_utc(std::string_view text);

// 32 hex characters behind `prefix`; thread-safe.
IdSource random_ids(std::string prefix);

// prefix-0001, prefix-0002, ...
IdSource sequential_ids(std::string prefix);

bool is_url_safe_id(std::string_view id);

}  // namespace examsim
