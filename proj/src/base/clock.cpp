#include "examsim/clock.hpp"

#include <cstdio>
#include <ctime>
#include <memory>
#include <mutex>
#include <random>

namespace examsim {

Clock system_clock() {
  return [] {
    return std::chrono::time_point_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now());
  };
}

Clock stepping_clock(Timestamp start, std::chrono::milliseconds step) {
  auto next = std::make_shared<Timestamp>(start);
  auto mutex = std::make_shared<std::mutex>();
  return [next, mutex, step] {
    std::lock_guard lock(*mutex);
    Timestamp now = *next;
    *next += step;
    return now;
  };
}

Timestamp replay_epoch() {
  return Timestamp(std::chrono::seconds(1704067200));
}

std::string format_utc(Timestamp t) {
  auto ms = t.time_since_epoch().count();
  auto secs = static_cast<std::time_t>(ms / 1000);
  auto rem = ms % 1000;
  if (rem < 0) {
    rem += 1000;
    --secs;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                tm.tm_sec, static_cast<int>(rem));
  return buf;
}

std::optional<Timestamp> parse_utc(std::string_view text) {
  std::string s(text);
  std::tm tm{};
  int millis = 0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ%n", &tm.tm_year, &tm.tm_mon,
                  &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &millis,
                  &consumed) != 7 ||
      static_cast<std::size_t>(consumed) != s.size()) {
    return std::nullopt;
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  std::time_t secs = timegm(&tm);
  return Timestamp(std::chrono::milliseconds(static_cast<std::int64_t>(secs) * 1000 + millis));
}

IdSource random_ids(std::string prefix) {
  struct State {
    std::mutex mutex;
    std::mt19937_64 rng{std::random_device{}()};
  };
  auto state = std::make_shared<State>();
  return [state, prefix = std::move(prefix)] {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    {
      std::lock_guard lock(state->mutex);
      hi = state->rng();
      lo = state->rng();
    }
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return prefix + buf;
  };
}

IdSource sequential_ids(std::string prefix) {
  auto counter = std::make_shared<int>(0);
  auto mutex = std::make_shared<std::mutex>();
  return [counter, mutex, prefix = std::move(prefix)] {
    std::lock_guard lock(*mutex);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d", ++*counter);
    return prefix + buf;
  };
}

bool is_url_safe_id(std::string_view id) {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace examsim
