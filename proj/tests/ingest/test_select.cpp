#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "examsim/ingest/document.hpp"
#include "support/select_oracle.hpp"

using namespace examsim::ingest;
using namespace examsim::testing::select_oracle;

TEST_CASE("absent topic words select nothing") {
  std::vector<Document> docs{make_doc({"process and thread", "kernel memory"})};
  CHECK(select_excerpts(docs, "networking", 1000).empty());
  CHECK(select_excerpts(docs, "of an", 1000).empty());
  CHECK(select_excerpts(docs, "process", 0).empty());
}

TEST_CASE("a single matching chunk is selected alone") {
  std::vector<Document> docs{make_doc({"process and thread", "kernel memory", "disk"})};
  auto refs = select_excerpts(docs, "Memory", 1000);
  REQUIRE(refs.size() == 1);
  CHECK(refs[0] == ExcerptRef{0, 1, 1});
  CHECK(excerpt_texts(docs, refs) == std::vector<std::string>{"kernel memory"});
}

TEST_CASE("ranking prefers score, then document and chunk order") {
  std::vector<Document> docs{make_doc({"cache", "cache lock"}), make_doc({"lock cache", "lock"})};
  auto refs = select_excerpts(docs, "cache lock", 1000);
  REQUIRE(refs.size() == 4);
  CHECK(refs[0] == ExcerptRef{0, 1, 2});
  CHECK(refs[1] == ExcerptRef{1, 0, 2});
  CHECK(refs[2] == ExcerptRef{0, 0, 1});
  CHECK(refs[3] == ExcerptRef{1, 1, 1});
}

TEST_CASE("selection matches the brute-force subset oracle") {
  std::mt19937 rng(31337);
  for (int round = 0; round < 2000; ++round) {
    auto docs = random_docs(rng, 10);
    auto topic = random_topic(rng);
    int budget = 1 + static_cast<int>(rng() % 120);
    auto expected = brute_force(docs, topic, budget);
    auto actual = select_excerpts(docs, topic, budget);
    REQUIRE(actual == expected);
  }
}

TEST_CASE("budget safety and determinism on larger inputs") {
  std::mt19937 rng(5);
  for (int round = 0; round < 300; ++round) {
    auto docs = random_docs(rng, 60);
    auto topic = random_topic(rng);
    int budget = static_cast<int>(rng() % 400) - 20;
    auto a = select_excerpts(docs, topic, budget);
    auto b = select_excerpts(docs, topic, budget);
    CHECK(a == b);
    int used = 0;
    for (const auto& r : a) used += docs[r.document].chunks[r.chunk].estimated_tokens;
    CHECK(used <= std::max(budget, 0));
  }
}
