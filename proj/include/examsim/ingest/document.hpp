#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace examsim::ingest {

inline constexpr int kDefaultChunkBudget = 800;

enum class DocumentFormat { PlainText, Markdown };

std::string_view to_string(DocumentFormat format);
std::optional<DocumentFormat> parse_document_format(std::string_view text);

struct Chunk {
  std::string text;
  int estimated_tokens = 0;
  // Half-open byte range into the document body.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Chunk&) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::string body;
  DocumentFormat format = DocumentFormat::PlainText;
  std::vector<Chunk> chunks;
};

// ceil(bytes / 4)
int estimate_tokens(std::string_view text);

// Splits the body into contiguous chunks that cover it exactly. Paragraphs
// (separated by blank lines) are merged greedily up to the budget; markdown
// headings always start a new chunk; an oversize paragraph is split at
// sentence ends, then hard-split on UTF-8 boundaries.
// Throws Error(EmptyDocument) for a blank body.
Document chunk_document(Document doc, int budget_tokens = kDefaultChunkBudget);

struct ExcerptRef {
  std::size_t document = 0;  // index into the documents span
  std::size_t chunk = 0;
  int score = 0;

  bool operator==(const ExcerptRef&) const = default;
};

// Lower-cased ASCII alphanumeric words of at least three characters.
std::vector<std::string> topic_words(std::string_view text);

// Number of distinct topic words that occur in the chunk.
int score_chunk(const std::vector<std::string>& topic_terms, std::string_view chunk_text);

// Chunks with a positive score, sorted by score (descending), then document
// order, then chunk order; the longest prefix of that ranking that fits the
// budget is returned. Deterministic.
std::vector<ExcerptRef> select_excerpts(std::span<const Document> documents,
                                        std::string_view topic, int budget_tokens);

// Convenience: the selected chunk texts in selection order.
std::vector<std::string> excerpt_texts(std::span<const Document> documents,
                                       const std::vector<ExcerptRef>& refs);

}  // namespace examsim::ingest
