#include "examsim/core/runner.hpp"

namespace examsim::core {

ExchangeResult run_exchange(const Engine& engine, provider::ChatProvider& provider,
                            ExamSession& session, Directive directive) {
  ExchangeResult result;
  for (;;) {
    auto response = provider.complete(directive.request);
    ++result.provider_calls;
    result.latency_ms += response.latency_ms;
    auto applied = engine.apply_provider_response(session, directive, response);
    if (!applied.retry) {
      result.applied = std::move(applied);
      return result;
    }
    directive = std::move(*applied.retry);
  }
}

}  // namespace examsim::core
