#pragma once

#include <cstdint>

#include "examsim/core/engine.hpp"
#include "examsim/provider/types.hpp"

namespace examsim::core {

struct ExchangeResult {
  ApplyResult applied;
  // Provider latency summed over the initial call and any re-ask.
  std::int64_t latency_ms = 0;
  int provider_calls = 0;
};

// Sends the directive, applies the reply and performs the engine's single
// re-ask when asked to. Provider errors propagate with the session unchanged.
ExchangeResult run_exchange(const Engine& engine, provider::ChatProvider& provider,
                            ExamSession& session, Directive directive);

}  // namespace examsim::core
