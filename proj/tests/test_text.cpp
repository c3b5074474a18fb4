#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "popcast/text.hpp"

using namespace popcast;

namespace {

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

// boundary offsets in the whitespace-free text, excluding the final end
std::set<size_t> boundary_offsets(const std::vector<std::string>& sentences) {
  std::set<size_t> out;
  size_t acc = 0;
  for (size_t i = 0; i + 1 < sentences.size(); ++i) {
    acc += strip_ws(sentences[i]).size();
    out.insert(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("two terminal periods") {
  auto s = split_sentences("Rates rose. Markets fell.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "Rates rose.");
  CHECK(s[1] == "Markets fell.");
}

TEST_CASE("empty input") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   \n ").empty());
}

TEST_CASE("no terminal punctuation yields one sentence") {
  auto s = split_sentences("a headline without punctuation");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == "a headline without punctuation");
}

TEST_CASE("question and exclamation boundaries") {
  auto s = split_sentences("Was anyone hurt? Nobody was! Traffic resumed.");
  REQUIRE(s.size() == 3);
  CHECK(s[1] == "Nobody was!");
}

TEST_CASE("abbreviations and decimals do not split") {
  auto s = split_sentences("Mr. Smith paid 4.5 percent at Acme Corp. last week.");
  CHECK(s.size() == 1);
}

TEST_CASE("closing quote after terminal stays with the sentence") {
  auto s = split_sentences("\"We are done.\" The team left.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "\"We are done.\"");
  CHECK(s[1] == "The team left.");
}

TEST_CASE("concatenation recovers input modulo whitespace") {
  const std::string text = "One two. Three four! Five? \"Six.\"  Seven ends";
  auto s = split_sentences(text);
  std::string joined;
  for (const auto& x : s) joined += x;
  CHECK(strip_ws(joined) == strip_ws(text));
}

TEST_CASE("hand-annotated fixture: >=90% of boundaries matched") {
  std::ifstream in(std::string(POPCAST_TEST_DATA_DIR) + "/sentence_boundaries.json");
  REQUIRE(in.good());
  nlohmann::json fixture;
  in >> fixture;
  REQUIRE(fixture.size() == 20);

  size_t annotated_total = 0, matched = 0, predicted_total = 0, predicted_matched = 0;
  for (const auto& para : fixture) {
    const std::string text = para["text"].get<std::string>();
    const auto annotated = para["sentences"].get<std::vector<std::string>>();
    const auto predicted = split_sentences(text);

    // splitter outputs must reassemble the paragraph
    std::string joined;
    for (const auto& s : predicted) joined += s;
    CHECK(strip_ws(joined) == strip_ws(text));

    const auto want = boundary_offsets(annotated);
    const auto got = boundary_offsets(predicted);
    annotated_total += want.size();
    predicted_total += got.size();
    for (size_t b : want) matched += got.count(b);
    for (size_t b : got) predicted_matched += want.count(b);
  }
  INFO("matched ", matched, " of ", annotated_total, " annotated boundaries");
  CHECK(static_cast<double>(matched) >= 0.9 * static_cast<double>(annotated_total));
  // over-splitting guard
  CHECK(static_cast<double>(predicted_matched) >= 0.9 * static_cast<double>(predicted_total));
}

TEST_CASE("tokenize basics") {
  CHECK(tokenize("Uber Freight, Inc.") == std::vector<std::string>{"uber", "freight", "inc"});
  CHECK(tokenize("A a A") == std::vector<std::string>{"a", "a", "a"});
  CHECK(tokenize("$400 billion") == std::vector<std::string>{"$400", "billion"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  --  ...  ").empty());
}

TEST_CASE("tokenize strips curly quotes and dashes") {
  CHECK(tokenize("“Europe” — today’s") ==
        std::vector<std::string>{"europe", "today’s"});
}

TEST_CASE("tokenize keeps digit and symbol tokens whole") {
  CHECK(tokenize("3:55 p.m. 7-2 x+y") ==
        std::vector<std::string>{"3:55", "p.m", "7-2", "x+y"});
}

TEST_CASE("split and tokenize are deterministic") {
  const std::string text = "Dr. Lee said so. Results in March! Is it real? \"Yes.\"";
  const auto s1 = split_sentences(text);
  const auto s2 = split_sentences(text);
  CHECK(s1 == s2);
  const auto t1 = tokenize(text);
  const auto t2 = tokenize(text);
  CHECK(t1 == t2);
}
