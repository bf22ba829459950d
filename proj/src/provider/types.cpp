#include "examsim/provider/types.hpp"

#include <stdexcept>

namespace examsim::provider {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Start: return "start";
    case Stage::Answer: return "answer";
    case Stage::Hint: return "hint";
    case Stage::Grade: return "grade";
    case Stage::Continue: return "continue";
    case Stage::Close: return "close";
  }
  return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::Start, Stage::Answer, Stage::Hint, Stage::Grade, Stage::Continue,
                  Stage::Close}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

void validate(const ProviderRequest& request) {
  if (request.instructions.empty()) {
    throw std::invalid_argument("provider request without instructions");
  }
  if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
    throw std::invalid_argument("temperature must lie in [0, 2]");
  }
  if (request.max_output_tokens <= 0) {
    throw std::invalid_argument("max_output_tokens must be positive");
  }
  for (std::size_t i = 1; i < request.transcript.size(); ++i) {
    if (request.transcript[i].role == request.transcript[i - 1].role) {
      throw std::invalid_argument("transcript roles must alternate");
    }
  }
}

}  // namespace examsim::provider
