#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "examsim/core/engine.hpp"
#include "examsim/core/session.hpp"
#include "examsim/ingest/document.hpp"

namespace examsim::service {

using json = nlohmann::json;

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Storage form. Only raw entry text is stored; display text and tags are
// re-derived on load, so a stored session cannot disagree with the parser.
json session_to_json(const core::ExamSession& session);
core::ExamSession session_from_json(const json& doc);

// Client views: display text and structured tags, never raw sentinel text.
std::string message_kind(const core::ExamSession& session, const core::TranscriptEntry& entry);
json tag_view(const core::SentinelTag& tag);
json grade_view(const core::GradeRecord& grade);
json entry_view(const core::ExamSession& session, const core::TranscriptEntry& entry);
json counters_view(const core::ExamSession& session, const core::EngineOptions& options);
json session_view(const core::ExamSession& session, const core::EngineOptions& options);

json document_to_json(const ingest::Document& doc);
// Chunks are recomputed with `chunk_budget`.
ingest::Document document_from_json(const json& doc, int chunk_budget);

}  // namespace examsim::service
