#include "examsim/service/rate_limiter.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace examsim::service {

namespace {

constexpr std::int64_t kUnitsPerRequest = 60000;

}  // namespace

RateLimiter::RateLimiter(RateLimitConfig config, MonotonicMs now)
    : config_(config), now_(std::move(now)) {
  if (config_.capacity < 1 || config_.refill_per_minute < 1) {
    throw std::invalid_argument("rate limit capacity and refill must be positive");
  }
  if (!now_) {
    now_ = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
  }
}

RateDecision RateLimiter::acquire(const std::string& key) {
  const std::int64_t full = config_.capacity * kUnitsPerRequest;
  const std::int64_t now = now_();
  std::lock_guard lock(mutex_);
  auto [it, inserted] = buckets_.try_emplace(key, Bucket{full, now});
  Bucket& b = it->second;
  if (!inserted && now > b.at_ms) {
    b.level = std::min(full, b.level + (now - b.at_ms) * config_.refill_per_minute);
  }
  b.at_ms = std::max(b.at_ms, now);

  if (b.level >= kUnitsPerRequest) {
    b.level -= kUnitsPerRequest;
    return {};
  }
  std::int64_t wait_ms =
      (kUnitsPerRequest - b.level + config_.refill_per_minute - 1) / config_.refill_per_minute;
  return {false, static_cast<int>(std::max<std::int64_t>(1, (wait_ms + 999) / 1000))};
}

}  // namespace examsim::service
