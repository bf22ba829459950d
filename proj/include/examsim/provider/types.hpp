#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "examsim/errors.hpp"

namespace examsim::provider {

enum class ChatRole { User, Assistant };

struct ChatMessage {
  ChatRole role;
  std::string text;

  bool operator==(const ChatMessage&) const = default;
};

// What the engine is asking for. Not sent over the wire; the scripted mock
// matches on it.
enum class Stage { Start, Answer, Hint, Grade, Continue, Close };

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

struct RequestContext {
  Stage stage = Stage::Start;
  int segment_count = 0;

  bool operator==(const RequestContext&) const = default;
};

inline constexpr double kDefaultTemperature = 0.2;
inline constexpr int kDefaultMaxOutputTokens = 1024;

struct ProviderRequest {
  std::string instructions;
  std::vector<ChatMessage> transcript;
  std::optional<std::string> directive_note;
  double temperature = kDefaultTemperature;
  int max_output_tokens = kDefaultMaxOutputTokens;
  RequestContext context;

  bool operator==(const ProviderRequest&) const = default;
};

// Throws std::invalid_argument when instructions are empty, temperature is
// outside [0,2], max_output_tokens is not positive, or two consecutive
// transcript messages share a role.
void validate(const ProviderRequest& request);

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;

  bool operator==(const TokenUsage&) const = default;
};

struct ProviderResponse {
  std::string text;
  std::optional<TokenUsage> usage;
  std::int64_t latency_ms = 0;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

// Any chat-completion backend. Implementations must tolerate concurrent
// calls from different sessions.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual ProviderResponse complete(const ProviderRequest& request) = 0;
};

}  // namespace examsim::provider
