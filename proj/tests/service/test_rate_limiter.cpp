#include <doctest.h>

#include <deque>
#include <random>

#include "examsim/service/rate_limiter.hpp"

using namespace examsim::service;

namespace {

struct FakeClock {
  std::int64_t ms = 0;
  RateLimiter::MonotonicMs fn() {
    return [this] { return ms; };
  }
};

}  // namespace

TEST_CASE("31 requests in one instant: the last is refused") {
  FakeClock clock;
  RateLimiter limiter({}, clock.fn());
  for (int i = 0; i < 30; ++i) CHECK(limiter.acquire("t").allowed);
  auto refused = limiter.acquire("t");
  CHECK_FALSE(refused.allowed);
  CHECK(refused.retry_after_seconds == 2);

  clock.ms += 1999;
  CHECK_FALSE(limiter.acquire("t").allowed);
  clock.ms += 1;
  CHECK(limiter.acquire("t").allowed);
  CHECK_FALSE(limiter.acquire("t").allowed);
}

TEST_CASE("buckets are per key") {
  FakeClock clock;
  RateLimiter limiter({2, 30}, clock.fn());
  CHECK(limiter.acquire("a").allowed);
  CHECK(limiter.acquire("a").allowed);
  CHECK_FALSE(limiter.acquire("a").allowed);
  CHECK(limiter.acquire("b").allowed);
}

TEST_CASE("refill is capped at capacity") {
  FakeClock clock;
  RateLimiter limiter({}, clock.fn());
  clock.ms = 10 * 60 * 1000;
  int allowed = 0;
  for (int i = 0; i < 40; ++i) allowed += limiter.acquire("t").allowed;
  CHECK(allowed == 30);
}

// At most 30 requests in every 60 s window never sees a refusal; more than
// 30 in some window always does.
TEST_CASE("window property under random schedules") {
  std::mt19937 rng(8);
  for (int round = 0; round < 300; ++round) {
    FakeClock clock;
    RateLimiter limiter({}, clock.fn());
    std::deque<std::int64_t> window;
    const bool burst = round % 3 == 0;
    bool refused = false;
    bool exceeded = false;
    for (int i = 0; i < 200; ++i) {
      clock.ms += burst ? static_cast<std::int64_t>(rng() % 1500) : static_cast<std::int64_t>(rng() % 6000);
      while (!window.empty() && window.front() <= clock.ms - 60000) window.pop_front();
      if (!burst && window.size() >= 30) continue;  // keep under the limit
      window.push_back(clock.ms);
      if (window.size() > 30) exceeded = true;
      if (!limiter.acquire("t").allowed) {
        refused = true;
        window.pop_back();
      }
    }
    if (!burst) CHECK_FALSE(refused);
    if (!exceeded) CHECK_FALSE(refused);
  }
}
