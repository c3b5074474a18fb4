#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "popcast/corpus.hpp"
#include "popcast/pipeline.hpp"
#include "popcast/synth.hpp"

using namespace popcast;

namespace {

Document make_doc(const std::string& id, size_t n_sentences, size_t tokens_per_sentence = 3) {
  Document d;
  d.id = id;
  d.source = "test";
  for (size_t i = 0; i < n_sentences; ++i) {
    Sentence s;
    for (size_t t = 0; t < tokens_per_sentence; ++t) {
      s.tokens.push_back("w" + std::to_string(i) + "x" + std::to_string(t));
      s.text += (t ? " " : "") + s.tokens.back();
    }
    s.text += ".";
    d.sentences.push_back(std::move(s));
  }
  return d;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/popcast_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("filter_document") {
  CHECK(filter_document(make_doc("a", 2)).reason == RejectReason::TooShort);
  CHECK(filter_document(make_doc("b", 101)).reason == RejectReason::TooLong);
  CHECK(filter_document(make_doc("c", 50)).accepted);
  CHECK(filter_document(make_doc("d", 3)).accepted);
  CHECK(filter_document(make_doc("e", 100)).accepted);

  Document ungrammatical = make_doc("f", 5);
  ungrammatical.sentences[2].tokens = {"one"};
  CHECK(filter_document(ungrammatical).reason == RejectReason::NoGrammaticalSentences);
}

TEST_CASE("filter idempotence: cleaning an accepted document changes nothing") {
  Document d = make_doc("a", 10);
  REQUIRE(filter_document(d).accepted);
  size_t dropped = 0;
  Document cleaned = clean_document(d, default_grammatical, &dropped);
  CHECK(dropped == 0);
  CHECK(cleaned.size() == d.size());
  CHECK(filter_document(cleaned).accepted);
}

TEST_CASE("clean_document drops failing sentences") {
  Document d = make_doc("a", 5);
  d.sentences[1].tokens = {"solo"};
  size_t dropped = 0;
  Document cleaned = clean_document(d, default_grammatical, &dropped);
  CHECK(dropped == 1);
  CHECK(cleaned.size() == 4);
  CHECK(filter_document(cleaned).accepted);
}

TEST_CASE("custom grammaticality predicate") {
  Document d = make_doc("a", 4);
  const GrammarPredicate reject_all = [](const Sentence&) { return false; };
  CHECK(filter_document(d, reject_all).reason == RejectReason::NoGrammaticalSentences);
}

TEST_CASE("split buckets are deterministic and roughly 8:1:1") {
  std::vector<Document> docs;
  for (int i = 0; i < 20000; ++i) docs.push_back(make_doc("doc-" + std::to_string(i), 3));
  const CorpusSplit split = auto_split(docs);
  CHECK(split.train.size() + split.validation.size() + split.test.size() == docs.size());
  const double train_frac = split.train.size() / 20000.0;
  const double val_frac = split.validation.size() / 20000.0;
  const double test_frac = split.test.size() / 20000.0;
  CHECK(train_frac == doctest::Approx(0.8).epsilon(0.05));
  CHECK(val_frac == doctest::Approx(0.1).epsilon(0.25));
  CHECK(test_frac == doctest::Approx(0.1).epsilon(0.25));
  CHECK(split_bucket("doc-17") == split_bucket("doc-17"));
}

TEST_CASE("corpus stats and the released-scale check") {
  std::vector<Document> docs = {make_doc("a", 3, 4), make_doc("b", 5, 2)};
  const CorpusStats st = corpus_stats(docs);
  CHECK(st.document_count == 2);
  CHECK(st.sentence_count == 8);
  CHECK(st.min_sentences == 3);
  CHECK(st.max_sentences == 5);
  CHECK(st.mean_sentences == doctest::Approx(4.0));
  CHECK(st.mean_tokens_per_sentence == doctest::Approx((3 * 4 + 5 * 2) / 8.0));

  std::string detail;
  CHECK_FALSE(matches_infopop_scale(st, &detail));
  CHECK(!detail.empty());

  CorpusStats full;
  full.document_count = 51770;
  full.sentence_count = 1711890;
  full.min_sentences = 3;
  full.max_sentences = 100;
  CHECK(matches_infopop_scale(full));
}

TEST_CASE("raw document reading splits text") {
  TempFile f("raw.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"id":"d1","source":"site","text":"Rates rose. Markets fell."})" << "\n";
    out << R"({"id":"d2","source":"site","sentences":["Pre split one.","Pre split two."]})" << "\n";
  }
  auto docs = read_raw_documents(f.path);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].size() == 2);
  CHECK(docs[0].sentences[0].text == "Rates rose.");
  CHECK(docs[0].sentences[0].tokens == std::vector<std::string>{"rates", "rose"});
  CHECK(docs[1].size() == 2);
}

TEST_CASE("empty file yields empty corpus") {
  TempFile f("empty.jsonl");
  { std::ofstream out(f.path); }
  CHECK(read_raw_documents(f.path).empty());
  CHECK(read_corpus_file(f.path).documents.empty());
}

TEST_CASE("malformed line reports the line number") {
  TempFile f("bad.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"id":"d1","source":"s","sentences":["Ok here."]})" << "\n";
    out << "{not json\n";
  }
  CHECK_THROWS_WITH_AS(read_corpus_file(f.path),
                       doctest::Contains(":2:"), std::runtime_error);
}

TEST_CASE("duplicate id is an error") {
  TempFile f("dup.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"id":"d1","source":"s","sentences":["One two."]})" << "\n";
    out << R"({"id":"d1","source":"s","sentences":["Three four."]})" << "\n";
  }
  CHECK_THROWS_WITH_AS(read_corpus_file(f.path),
                       doctest::Contains("duplicate id"), std::runtime_error);
}

TEST_CASE("canonical round-trip is byte-identical") {
  const auto synth = generate_synthetic_corpus({.seed = 11, .n_docs = 100});
  SyntheticFiles files = render_synthetic(synth);

  TempFile f1("rt1.jsonl"), f2("rt2.jsonl");
  write_corpus_file(f1.path, files.latent);
  Corpus loaded = read_corpus_file(f1.path);
  write_corpus_file(f2.path, loaded);
  CHECK(slurp(f1.path) == slurp(f2.path));
  CHECK(loaded.documents.size() == 100);
}

TEST_CASE("query and summary files round-trip through tokens") {
  TempFile f("queries.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"id":"d1","queries":["Uber Freight launch","rates"]})" << "\n";
  }
  auto queries = read_query_file(f.path);
  REQUIRE(queries.size() == 1);
  REQUIRE(queries[0].queries.size() == 2);
  CHECK(queries[0].queries[0] == std::vector<std::string>{"uber", "freight", "launch"});

  TempFile g("summaries.jsonl");
  {
    std::ofstream out(g.path);
    out << R"({"id":"d1","summary":["Uber expanded.","Rates fell."]})" << "\n";
  }
  auto summaries = read_summary_file(g.path);
  REQUIRE(summaries.size() == 1);
  REQUIRE(summaries[0].summary_sentences.size() == 2);
  CHECK(summaries[0].summary_sentences[1] == std::vector<std::string>{"rates", "fell"});
}

TEST_CASE("corpus-level IDF scope also yields normalized labels") {
  const auto synth = generate_synthetic_corpus({.seed = 33, .n_docs = 15});
  SyntheticFiles files = render_synthetic(synth);
  Corpus corpus = files.raw;
  LabelOptions opt;
  opt.corpus_idf = true;
  const auto result = label_corpus(corpus, LabelTask::Popularity, files.queries, {}, opt);
  CHECK(result.labeled == corpus.documents.size());
  for (const auto& labels : corpus.labels) {
    REQUIRE(labels.popularity.has_value());
    double sum = 0.0;
    for (double v : *labels.popularity) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("results are independent of the job count") {
  const auto synth = generate_synthetic_corpus({.seed = 21, .n_docs = 40});
  SyntheticFiles files = render_synthetic(synth);

  auto labeled_with = [&](size_t jobs) {
    Corpus corpus = files.raw;
    LabelOptions opt;
    opt.jobs = jobs;
    label_corpus(corpus, LabelTask::Popularity, files.queries, files.summaries, opt);
    label_corpus(corpus, LabelTask::SL, files.queries, files.summaries, opt);
    return corpus;
  };
  const Corpus one = labeled_with(1);
  const Corpus four = labeled_with(4);
  for (size_t i = 0; i < one.documents.size(); ++i) {
    CHECK(one.labels[i].popularity == four.labels[i].popularity);
    CHECK(one.labels[i].salience_l == four.labels[i].salience_l);
  }

  RankOptions rank_opt;
  rank_opt.scorer = "lexrank";
  rank_opt.jobs = 1;
  const auto scores_one = rank_corpus(files.raw.documents, rank_opt);
  rank_opt.jobs = 4;
  const auto scores_four = rank_corpus(files.raw.documents, rank_opt);
  for (size_t i = 0; i < scores_one.size(); ++i) {
    CHECK(scores_one[i].values == scores_four[i].values);
  }
}

TEST_CASE("grammar file hook") {
  TempFile f("grammar.jsonl");
  {
    std::ofstream out(f.path);
    out << R"({"id":"d1","grammatical":[true,false,true]})" << "\n";
  }
  auto g = read_grammar_file(f.path);
  REQUIRE(g.count("d1") == 1);
  CHECK(g["d1"] == std::vector<bool>{true, false, true});
}
