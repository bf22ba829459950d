#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace examsim {

// Every failure the engine, the ingest pipeline or a provider can report.
// The service maps each variant onto exactly one API error code and status.
enum class ErrorCode {
  InvalidConfig,
  InvalidProfile,
  MissingTopic,
  WrongPhase,
  SessionConcluded,
  EmptyAnswer,
  HintsDisabledInExamMode,
  MinQuestionsNotMet,
  ProtocolViolation,
  StaleDirective,
  OutOfRange,
  EmptyDocument,
  ProviderTimeout,
  ProviderRateLimited,
  ProviderProtocolError,
  ProviderAuthError,
  ProviderUnavailable,
};

std::string_view to_string(ErrorCode code);
std::span<const ErrorCode> all_error_codes();

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MinQuestionsNotMet : public Error {
 public:
  MinQuestionsNotMet(int required, int actual);

  int required() const noexcept { return required_; }
  int actual() const noexcept { return actual_; }

 private:
  int required_;
  int actual_;
};

}  // namespace examsim
