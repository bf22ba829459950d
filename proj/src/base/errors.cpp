#include "examsim/errors.hpp"

#include <array>

namespace examsim {

namespace {

constexpr std::array kAllCodes = {
    ErrorCode::InvalidConfig,        ErrorCode::InvalidProfile,
    ErrorCode::MissingTopic,         ErrorCode::WrongPhase,
    ErrorCode::SessionConcluded,     ErrorCode::EmptyAnswer,
    ErrorCode::HintsDisabledInExamMode, ErrorCode::MinQuestionsNotMet,
    ErrorCode::ProtocolViolation,    ErrorCode::StaleDirective,
    ErrorCode::OutOfRange,           ErrorCode::EmptyDocument,
    ErrorCode::ProviderTimeout,      ErrorCode::ProviderRateLimited,
    ErrorCode::ProviderProtocolError, ErrorCode::ProviderAuthError,
    ErrorCode::ProviderUnavailable,
};

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "invalid_config";
    case ErrorCode::InvalidProfile: return "invalid_profile";
    case ErrorCode::MissingTopic: return "missing_topic";
    case ErrorCode::WrongPhase: return "wrong_phase";
    case ErrorCode::SessionConcluded: return "session_concluded";
    case ErrorCode::EmptyAnswer: return "empty_answer";
    case ErrorCode::HintsDisabledInExamMode: return "hints_disabled";
    case ErrorCode::MinQuestionsNotMet: return "min_questions_not_met";
    case ErrorCode::ProtocolViolation: return "protocol_violation";
    case ErrorCode::StaleDirective: return "stale_directive";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::EmptyDocument: return "empty_document";
    case ErrorCode::ProviderTimeout: return "provider_timeout";
    case ErrorCode::ProviderRateLimited: return "provider_rate_limited";
    case ErrorCode::ProviderProtocolError: return "provider_protocol_error";
    case ErrorCode::ProviderAuthError: return "provider_auth_error";
    case ErrorCode::ProviderUnavailable: return "provider_unavailable";
  }
  return "unknown";
}

std::span<const ErrorCode> all_error_codes() { return kAllCodes; }

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

MinQuestionsNotMet::MinQuestionsNotMet(int required, int actual)
    : Error(ErrorCode::MinQuestionsNotMet,
            "a grade requires at least " + std::to_string(required) +
                " answered questions in this segment, got " + std::to_string(actual)),
      required_(required),
      actual_(actual) {}

}  // namespace examsim
