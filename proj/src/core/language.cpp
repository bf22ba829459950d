#include "examsim/core/language.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <set>
#include <vector>

namespace examsim::core {

namespace {

struct StopWords {
  std::string_view language;
  std::array<std::string_view, 16> words;
};

// Words chosen to be frequent and rarely shared between the listed languages.
constexpr std::array kStopWords = {
    StopWords{"en", {"the", "and", "is", "are", "of", "which", "that", "this", "with", "when",
                     "because", "it", "be", "an", "what", "would"}},
    StopWords{"de", {"der", "die", "das", "und", "ist", "nicht", "ein", "eine", "mit", "auf",
                     "wird", "sind", "auch", "dass", "werden", "ich"}},
    StopWords{"fr", {"le", "la", "les", "et", "est", "une", "des", "du", "que", "pour", "dans",
                     "pas", "qui", "sont", "avec", "je"}},
    StopWords{"es", {"el", "los", "las", "y", "es", "una", "del", "que", "para", "con", "por",
                     "como", "pero", "son", "yo", "muy"}},
    StopWords{"it", {"il", "lo", "gli", "e", "una", "che", "per", "non", "sono", "della", "con",
                     "come", "anche", "io", "questo", "ma"}},
    StopWords{"nl", {"de", "het", "een", "en", "is", "niet", "van", "dat", "met", "zijn", "voor",
                     "ook", "wordt", "ik", "maar", "dit"}},
    StopWords{"pt", {"o", "os", "um", "uma", "e", "que", "para", "com", "não", "são", "do", "da",
                     "mas", "eu", "isso", "como"}},
};

// Decodes one UTF-8 code point; invalid bytes decode as U+FFFD.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  int len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xe ? 3 : (b0 >> 3) == 0x1e ? 4 : 0;
  if (len == 0 || i + len > s.size()) {
    ++i;
    return 0xfffd;
  }
  char32_t cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1f) : len == 3 ? (b0 & 0x0f) : (b0 & 0x07);
  for (int k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b >> 6) != 0x2) {
      ++i;
      return 0xfffd;
    }
    cp = (cp << 6) | (b & 0x3f);
  }
  i += len;
  return cp;
}

std::optional<std::string> detect_script(std::string_view text) {
  int latin = 0, cyrillic = 0, greek = 0, arabic = 0, hebrew = 0, han = 0, kana = 0, hangul = 0;
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp = next_code_point(text, i);
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= 0xc0 && cp <= 0x24f)) {
      ++latin;
    } else if (cp >= 0x400 && cp <= 0x4ff) {
      ++cyrillic;
    } else if (cp >= 0x370 && cp <= 0x3ff) {
      ++greek;
    } else if (cp >= 0x600 && cp <= 0x6ff) {
      ++arabic;
    } else if (cp >= 0x590 && cp <= 0x5ff) {
      ++hebrew;
    } else if (cp >= 0x3040 && cp <= 0x30ff) {
      ++kana;
    } else if (cp >= 0x4e00 && cp <= 0x9fff) {
      ++han;
    } else if (cp >= 0xac00 && cp <= 0xd7af) {
      ++hangul;
    }
  }
  const std::array<std::pair<int, std::string_view>, 7> scripts = {{
      {cyrillic, "ru"}, {greek, "el"}, {arabic, "ar"}, {hebrew, "he"},
      {kana, "ja"}, {hangul, "ko"}, {han, kana > 0 ? "ja" : "zh"},
  }};
  for (const auto& [count, language] : scripts) {
    if (count >= 4 && count > latin) return std::string(language);
  }
  return std::nullopt;
}

std::vector<std::string> latin_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u) || u >= 0x80) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

std::optional<std::string> detect_language(std::string_view text) {
  if (auto script = detect_script(text)) return script;

  auto words = latin_words(text);
  std::string_view best;
  int best_hits = 0;
  bool tie = false;
  for (const auto& entry : kStopWords) {
    int hits = 0;
    for (const auto& word : words) {
      if (std::find(entry.words.begin(), entry.words.end(), word) != entry.words.end()) ++hits;
    }
    if (hits > best_hits) {
      best = entry.language;
      best_hits = hits;
      tie = false;
    } else if (hits == best_hits && hits > 0) {
      tie = true;
    }
  }
  if (best_hits < 3 || tie) return std::nullopt;
  return std::string(best);
}

std::string primary_subtag(std::string_view language) {
  std::string out;
  for (char c : language) {
    if (c == '-' || c == '_') break;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool same_language(std::string_view a, std::string_view b) {
  return primary_subtag(a) == primary_subtag(b);
}

}  // namespace examsim::core
