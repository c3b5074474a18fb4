#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace popcast {

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;  // lowercase, derived from text
};

struct Document {
  std::string id;
  std::string source;
  std::vector<Sentence> sentences;

  size_t size() const { return sentences.size(); }
};

struct QuerySet {
  std::string document_id;
  std::vector<std::vector<std::string>> queries;  // token lists, each non-empty
};

struct SummaryRef {
  std::string document_id;
  std::vector<std::vector<std::string>> summary_sentences;
};

enum class LabelTask { Popularity, S1, S2, SL };

const char* task_name(LabelTask t);
std::optional<LabelTask> parse_task(const std::string& name);

// Per-document labels attached to a canonical corpus.
struct CorpusLabels {
  std::optional<std::vector<double>> popularity;
  std::optional<std::vector<double>> salience_1;
  std::optional<std::vector<double>> salience_2;
  std::optional<std::vector<double>> salience_l;

  const std::optional<std::vector<double>>& get(LabelTask t) const;
  std::optional<std::vector<double>>& get(LabelTask t);
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<CorpusLabels> labels;  // parallel to documents
};

// ---- filtering ----------------------------------------------------------

using GrammarPredicate = std::function<bool(const Sentence&)>;

// default predicate: at least two tokens
bool default_grammatical(const Sentence& s);

enum class RejectReason { TooShort, TooLong, NoGrammaticalSentences };
const char* reject_reason_name(RejectReason r);

struct FilterDecision {
  bool accepted = false;
  std::optional<RejectReason> reason;
};

constexpr size_t kMinSentences = 3;
constexpr size_t kMaxSentences = 100;

// Accept iff 3 <= N <= 100 and every sentence passes the predicate.
// Checked in order: TooLong, NoGrammaticalSentences, TooShort.
FilterDecision filter_document(const Document& doc,
                               const GrammarPredicate& grammatical = default_grammatical);

// Drops sentences failing the predicate; pairs with filter_document in ingest.
Document clean_document(Document doc, const GrammarPredicate& grammatical = default_grammatical,
                        size_t* dropped = nullptr);

// ---- splits --------------------------------------------------------------

enum class SplitBucket { Train, Validation, Test };

// FNV-1a(id) mod 10: 0-7 train, 8 validation, 9 test.
SplitBucket split_bucket(const std::string& document_id);

struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

CorpusSplit auto_split(const std::vector<Document>& docs);

// ---- statistics ----------------------------------------------------------

struct CorpusStats {
  size_t document_count = 0;
  size_t sentence_count = 0;
  size_t min_sentences = 0;
  size_t max_sentences = 0;
  double mean_sentences = 0.0;
  double mean_tokens_per_sentence = 0.0;
};

CorpusStats corpus_stats(const std::vector<Document>& docs);

// Full released-dataset scale: 51,770 documents / 1,711,890 sentences,
// every document within [3, 100] sentences.
bool matches_infopop_scale(const CorpusStats& stats, std::string* detail = nullptr);

// ---- JSONL IO ------------------------------------------------------------

// Raw input line: {"id","source","text"} or {"id","source","sentences":[...]}.
// Returned documents are split (when needed) and tokenized but unfiltered.
std::vector<Document> read_raw_documents(const std::string& path);

// Canonical line: {"id","source","sentences":[str],
//                  "popularity":[f]|null,"salience_1":...,"salience_2":...,"salience_l":...}
Corpus read_corpus_file(const std::string& path);
void write_corpus_file(const std::string& path, const Corpus& corpus);

std::vector<QuerySet> read_query_file(const std::string& path);
void write_query_file(const std::string& path, const std::vector<QuerySet>& queries);

std::vector<SummaryRef> read_summary_file(const std::string& path);
void write_summary_file(const std::string& path, const std::vector<SummaryRef>& summaries);

// Optional per-sentence grammaticality file, one line per document:
// {"id": str, "grammatical": [bool]}. Used by the ingest hook.
std::unordered_map<std::string, std::vector<bool>> read_grammar_file(const std::string& path);

}  // namespace popcast
