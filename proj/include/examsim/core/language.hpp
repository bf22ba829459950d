#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace examsim::core {

// Rough guess of the language a student answered in: dominant non-Latin
// script first, then stop-word hits for a handful of Latin-script languages.
// Returns nullopt when the evidence is thin (short answers, code, numbers).
std::optional<std::string> detect_language(std::string_view text);

// "de-DE" -> "de", "EN_us" -> "en"
std::string primary_subtag(std::string_view language);

bool same_language(std::string_view a, std::string_view b);

}  // namespace examsim::core
