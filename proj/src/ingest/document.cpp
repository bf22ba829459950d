#include "examsim/ingest/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "examsim/errors.hpp"

namespace examsim::ingest {

namespace {

struct Block {
  std::size_t begin;
  std::size_t end;
  bool heading;
};

bool is_blank_line(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

bool is_heading_line(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  std::size_t hashes = 0;
  while (i < line.size() && line[i] == '#') {
    ++i;
    ++hashes;
  }
  if (hashes == 0 || hashes > 6) return false;
  return i == line.size() || line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ||
         line[i] == '\n';
}

std::vector<Block> split_blocks(std::string_view body, bool markdown) {
  std::vector<Block> blocks;
  bool seen_content = false;
  bool prev_blank = false;
  std::size_t pos = 0;
  blocks.push_back({0, 0, false});
  while (pos < body.size()) {
    auto nl = body.find('\n', pos);
    std::size_t line_end = nl == std::string_view::npos ? body.size() : nl + 1;
    auto line = body.substr(pos, line_end - pos);
    bool blank = is_blank_line(line);
    if (!blank) {
      bool heading = markdown && is_heading_line(line);
      if (!seen_content) {
        blocks.back().heading = heading;
      } else if (prev_blank || heading) {
        blocks.back().end = pos;
        blocks.push_back({pos, pos, heading});
      }
      seen_content = true;
    }
    prev_blank = blank;
    pos = line_end;
  }
  blocks.back().end = body.size();
  return blocks;
}

bool is_utf8_continuation(char c) { return (static_cast<unsigned char>(c) & 0xc0) == 0x80; }

// Sentence pieces of [begin, end), each at most max_bytes long.
std::vector<std::pair<std::size_t, std::size_t>> split_oversize(std::string_view body,
                                                                std::size_t begin,
                                                                std::size_t end,
                                                                std::size_t max_bytes) {
  std::vector<std::pair<std::size_t, std::size_t>> sentences;
  std::size_t start = begin;
  for (std::size_t i = begin; i < end; ++i) {
    char c = body[i];
    if ((c == '.' || c == '!' || c == '?') && i + 1 < end &&
        std::isspace(static_cast<unsigned char>(body[i + 1]))) {
      std::size_t j = i + 1;
      while (j < end && std::isspace(static_cast<unsigned char>(body[j]))) ++j;
      sentences.emplace_back(start, j);
      start = j;
      i = j - 1;
    }
  }
  if (start < end) sentences.emplace_back(start, end);

  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  for (auto [s, e] : sentences) {
    while (e - s > max_bytes) {
      std::size_t cut = s + max_bytes;
      while (cut > s + 1 && is_utf8_continuation(body[cut])) --cut;
      pieces.emplace_back(s, cut);
      s = cut;
    }
    pieces.emplace_back(s, e);
  }
  return pieces;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::set<std::string> word_set(std::string_view text) {
  std::set<std::string> words;
  std::string current;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      current.push_back(c);
    } else if (!current.empty()) {
      words.insert(lower_ascii(current));
      current.clear();
    }
  }
  if (!current.empty()) words.insert(lower_ascii(current));
  return words;
}

}  // namespace

std::string_view to_string(DocumentFormat format) {
  return format == DocumentFormat::Markdown ? "markdown" : "plain_text";
}

std::optional<DocumentFormat> parse_document_format(std::string_view text) {
  if (text == "markdown" || text == "md") return DocumentFormat::Markdown;
  if (text == "plain_text" || text == "text" || text == "txt") return DocumentFormat::PlainText;
  return std::nullopt;
}

int estimate_tokens(std::string_view text) { return static_cast<int>((text.size() + 3) / 4); }

Document chunk_document(Document doc, int budget_tokens) {
  if (is_blank_line(doc.body)) throw Error(ErrorCode::EmptyDocument, "document body is empty");
  if (budget_tokens < 1) throw Error(ErrorCode::OutOfRange, "chunk budget must be positive");

  const std::string_view body = doc.body;
  const std::size_t max_bytes = static_cast<std::size_t>(budget_tokens) * 4;
  doc.chunks.clear();

  auto emit = [&](std::size_t begin, std::size_t end) {
    if (begin == end) return;
    auto text = body.substr(begin, end - begin);
    doc.chunks.push_back(Chunk{std::string(text), estimate_tokens(text), begin, end});
  };

  std::size_t cur_begin = 0;
  std::size_t cur_end = 0;
  auto flush = [&] {
    emit(cur_begin, cur_end);
    cur_begin = cur_end;
  };

  for (const Block& block : split_blocks(body, doc.format == DocumentFormat::Markdown)) {
    if (block.end - block.begin > max_bytes) {
      flush();
      for (auto [s, e] : split_oversize(body, block.begin, block.end, max_bytes)) {
        if (e - cur_begin > max_bytes) flush();
        cur_end = e;
      }
      flush();
      continue;
    }
    if (cur_end > cur_begin && (block.heading || block.end - cur_begin > max_bytes)) flush();
    cur_end = block.end;
  }
  flush();
  return doc;
}

std::vector<std::string> topic_words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& word : word_set(text)) {
    if (word.size() >= 3) out.push_back(word);
  }
  return out;
}

int score_chunk(const std::vector<std::string>& topic_terms, std::string_view chunk_text) {
  auto words = word_set(chunk_text);
  int score = 0;
  for (const auto& term : topic_terms) {
    if (words.contains(term)) ++score;
  }
  return score;
}

std::vector<ExcerptRef> select_excerpts(std::span<const Document> documents,
                                        std::string_view topic, int budget_tokens) {
  std::vector<ExcerptRef> ranked;
  if (budget_tokens <= 0) return ranked;
  auto terms = topic_words(topic);
  if (terms.empty()) return ranked;

  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (std::size_t c = 0; c < documents[d].chunks.size(); ++c) {
      int score = score_chunk(terms, documents[d].chunks[c].text);
      if (score > 0) ranked.push_back({d, c, score});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ExcerptRef& a, const ExcerptRef& b) { return a.score > b.score; });

  int used = 0;
  std::size_t keep = 0;
  for (; keep < ranked.size(); ++keep) {
    int tokens = documents[ranked[keep].document].chunks[ranked[keep].chunk].estimated_tokens;
    if (used + tokens > budget_tokens) break;
    used += tokens;
  }
  ranked.resize(keep);
  return ranked;
}

std::vector<std::string> excerpt_texts(std::span<const Document> documents,
                                       const std::vector<ExcerptRef>& refs) {
  std::vector<std::string> out;
  out.reserve(refs.size());
  for (const auto& ref : refs) out.push_back(documents[ref.document].chunks[ref.chunk].text);
  return out;
}

}  // namespace examsim::ingest
