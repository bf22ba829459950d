#pragma once

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "examsim/ingest/document.hpp"

namespace examsim::testing::select_oracle {

using ingest::Chunk;
using ingest::Document;
using ingest::ExcerptRef;

inline const std::vector<std::string> kVocabulary = {"process", "thread", "kernel", "memory",
                                              "page",    "cache",  "disk",   "lock",
                                              "an",      "of"};

inline Document make_doc(std::vector<std::string> chunk_texts) {
  Document d;
  for (auto& text : chunk_texts) {
    Chunk c;
    c.begin = d.body.size();
    d.body += text;
    c.end = d.body.size();
    c.estimated_tokens = static_cast<int>((text.size() + 3) / 4);
    c.text = std::move(text);
    d.chunks.push_back(std::move(c));
  }
  return d;
}

// Oracle tokeniser: vocabulary words are plain ASCII separated by spaces.
inline std::set<std::string> words_of(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (char c : text + " ") {
    if (c == ' ' || c == '.' || c == ',') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

inline int oracle_score(const std::string& topic, const std::string& text) {
  auto chunk_words = words_of(text);
  int score = 0;
  for (const auto& w : words_of(topic)) {
    if (w.size() >= 3 && chunk_words.contains(w)) ++score;
  }
  return score;
}

struct Candidate {
  std::size_t doc;
  std::size_t chunk;
  int score;
  int tokens;
};

// Enumerates every subset of the matching chunks that fits the budget and
// keeps those closed under the ranking (a chunk is only in when every
// better-ranked chunk is in); the largest such subset is the expected pick.
inline std::vector<ExcerptRef> brute_force(const std::vector<Document>& docs, const std::string& topic,
                                    int budget) {
  std::vector<Candidate> cands;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t c = 0; c < docs[d].chunks.size(); ++c) {
      int s = oracle_score(topic, docs[d].chunks[c].text);
      if (s > 0) cands.push_back({d, c, s, docs[d].chunks[c].estimated_tokens});
    }
  }
  auto rank_less = [](const Candidate& a, const Candidate& b) {
    return std::tuple(-a.score, a.doc, a.chunk) < std::tuple(-b.score, b.doc, b.chunk);
  };
  std::sort(cands.begin(), cands.end(), rank_less);

  const std::size_t n = cands.size();
  std::size_t best_mask = 0;
  int best_size = -1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int tokens = 0;
    bool closed = true;
    bool gap = false;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool in = (mask >> i) & 1;
      if (in) {
        if (gap) closed = false;
        tokens += cands[i].tokens;
        ++size;
      } else {
        gap = true;
      }
    }
    if (!closed || tokens > budget) continue;
    if (size > best_size) {
      best_size = size;
      best_mask = mask;
    }
  }
  std::vector<ExcerptRef> out;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1) out.push_back({cands[i].doc, cands[i].chunk, cands[i].score});
  }
  return out;
}

inline std::string random_text(std::mt19937& rng) {
  std::string text;
  int n = 1 + static_cast<int>(rng() % 40);
  for (int i = 0; i < n; ++i) {
    auto w = kVocabulary[rng() % kVocabulary.size()];
    if (rng() % 5 == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    text += w + (rng() % 7 == 0 ? ". " : " ");
  }
  return text;
}

inline std::vector<Document> random_docs(std::mt19937& rng, std::size_t max_chunks) {
  std::vector<Document> docs;
  std::size_t total = 1 + rng() % max_chunks;
  while (total > 0) {
    std::size_t n = 1 + rng() % total;
    std::vector<std::string> texts;
    for (std::size_t i = 0; i < n; ++i) texts.push_back(random_text(rng));
    docs.push_back(make_doc(std::move(texts)));
    total -= n;
  }
  return docs;
}

inline std::string random_topic(std::mt19937& rng) {
  std::string topic;
  int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) topic += kVocabulary[rng() % kVocabulary.size()] + " ";
  return topic;
}


}  // namespace examsim::testing::select_oracle
