#pragma once

#include <string>

#include "examsim/core/session.hpp"

namespace examsim::cli {

// Plain-text rendering of a whole session, stable byte for byte: used for
// golden replay files and for transcripts written by `chat`.
std::string render_transcript(const core::ExamSession& session);

}  // namespace examsim::cli
