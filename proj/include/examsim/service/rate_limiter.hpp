#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>

namespace examsim::service {

struct RateLimitConfig {
  int capacity = 30;
  int refill_per_minute = 30;
};

struct RateDecision {
  bool allowed = true;
  // Whole seconds until the next request would be allowed; 0 when allowed.
  int retry_after_seconds = 0;
};

// Token bucket per key, in exact integer arithmetic: one request costs
// 60000 units and the bucket gains refill_per_minute units per millisecond.
class RateLimiter {
 public:
  using MonotonicMs = std::function<std::int64_t()>;

  explicit RateLimiter(RateLimitConfig config = {}, MonotonicMs now = {});

  RateDecision acquire(const std::string& key);
  const RateLimitConfig& config() const { return config_; }

 private:
  struct Bucket {
    std::int64_t level;
    std::int64_t at_ms;
  };

  RateLimitConfig config_;
  MonotonicMs now_;
  std::mutex mutex_;
  std::map<std::string, Bucket> buckets_;
};

}  // namespace examsim::service
