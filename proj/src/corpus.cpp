#include "popcast/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "popcast/rng.hpp"
#include "popcast/text.hpp"

namespace popcast {

using ordered_json = nlohmann::ordered_json;

const char* task_name(LabelTask t) {
  switch (t) {
    case LabelTask::Popularity: return "popularity";
    case LabelTask::S1: return "s1";
    case LabelTask::S2: return "s2";
    case LabelTask::SL: return "sl";
  }
  return "?";
}

std::optional<LabelTask> parse_task(const std::string& name) {
  if (name == "popularity") return LabelTask::Popularity;
  if (name == "s1") return LabelTask::S1;
  if (name == "s2") return LabelTask::S2;
  if (name == "sl" || name == "s_l") return LabelTask::SL;
  return std::nullopt;
}

const std::optional<std::vector<double>>& CorpusLabels::get(LabelTask t) const {
  switch (t) {
    case LabelTask::Popularity: return popularity;
    case LabelTask::S1: return salience_1;
    case LabelTask::S2: return salience_2;
    case LabelTask::SL: return salience_l;
  }
  return popularity;
}

std::optional<std::vector<double>>& CorpusLabels::get(LabelTask t) {
  switch (t) {
    case LabelTask::Popularity: return popularity;
    case LabelTask::S1: return salience_1;
    case LabelTask::S2: return salience_2;
    case LabelTask::SL: return salience_l;
  }
  return popularity;
}

bool default_grammatical(const Sentence& s) { return s.tokens.size() >= 2; }

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::TooShort: return "TooShort";
    case RejectReason::TooLong: return "TooLong";
    case RejectReason::NoGrammaticalSentences: return "NoGrammaticalSentences";
  }
  return "?";
}

FilterDecision filter_document(const Document& doc, const GrammarPredicate& grammatical) {
  if (doc.size() > kMaxSentences) return {false, RejectReason::TooLong};
  for (const auto& s : doc.sentences) {
    if (!grammatical(s)) return {false, RejectReason::NoGrammaticalSentences};
  }
  if (doc.size() < kMinSentences) return {false, RejectReason::TooShort};
  return {true, std::nullopt};
}

Document clean_document(Document doc, const GrammarPredicate& grammatical, size_t* dropped) {
  std::vector<Sentence> kept;
  kept.reserve(doc.sentences.size());
  size_t n_dropped = 0;
  for (auto& s : doc.sentences) {
    if (grammatical(s)) {
      kept.push_back(std::move(s));
    } else {
      ++n_dropped;
    }
  }
  doc.sentences = std::move(kept);
  if (dropped) *dropped = n_dropped;
  return doc;
}

SplitBucket split_bucket(const std::string& document_id) {
  const uint64_t bucket = fnv1a(document_id) % 10;
  if (bucket <= 7) return SplitBucket::Train;
  if (bucket == 8) return SplitBucket::Validation;
  return SplitBucket::Test;
}

CorpusSplit auto_split(const std::vector<Document>& docs) {
  CorpusSplit split;
  for (const auto& d : docs) {
    switch (split_bucket(d.id)) {
      case SplitBucket::Train: split.train.push_back(d.id); break;
      case SplitBucket::Validation: split.validation.push_back(d.id); break;
      case SplitBucket::Test: split.test.push_back(d.id); break;
    }
  }
  return split;
}

CorpusStats corpus_stats(const std::vector<Document>& docs) {
  CorpusStats st;
  st.document_count = docs.size();
  size_t token_total = 0;
  for (const auto& d : docs) {
    const size_t n = d.size();
    st.sentence_count += n;
    if (st.document_count > 0) {
      if (st.min_sentences == 0 || n < st.min_sentences) st.min_sentences = n;
      if (n > st.max_sentences) st.max_sentences = n;
    }
    for (const auto& s : d.sentences) token_total += s.tokens.size();
  }
  if (st.document_count > 0) {
    st.mean_sentences = static_cast<double>(st.sentence_count) / st.document_count;
  }
  if (st.sentence_count > 0) {
    st.mean_tokens_per_sentence = static_cast<double>(token_total) / st.sentence_count;
  }
  return st;
}

bool matches_infopop_scale(const CorpusStats& stats, std::string* detail) {
  std::ostringstream os;
  bool ok = true;
  if (stats.document_count != 51770) {
    os << "document count " << stats.document_count << " != 51770; ";
    ok = false;
  }
  if (stats.sentence_count != 1711890) {
    os << "sentence count " << stats.sentence_count << " != 1711890; ";
    ok = false;
  }
  if (stats.document_count > 0 && (stats.min_sentences < 3 || stats.max_sentences > 100)) {
    os << "sentence counts outside [3,100]; ";
    ok = false;
  }
  if (detail) *detail = os.str();
  return ok;
}

// ---- JSONL ----------------------------------------------------------------

namespace {

[[noreturn]] void line_error(const std::string& path, size_t lineno, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

ordered_json parse_line(const std::string& path, size_t lineno, const std::string& line) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) line_error(path, lineno, "malformed JSON object");
  return j;
}

Sentence make_sentence(std::string text) {
  Sentence s;
  s.tokens = tokenize(text);
  s.text = std::move(text);
  return s;
}

std::optional<std::vector<double>> read_label_field(const ordered_json& j, const char* key,
                                                    size_t n, const std::string& path,
                                                    size_t lineno) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_array()) line_error(path, lineno, std::string(key) + " must be array or null");
  std::vector<double> v = j[key].get<std::vector<double>>();
  if (v.size() != n) line_error(path, lineno, std::string(key) + " length mismatch");
  return v;
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    fn(lineno, line);
  }
}

ordered_json label_json(const std::optional<std::vector<double>>& v) {
  if (!v) return nullptr;
  return ordered_json(*v);
}

}  // namespace

std::vector<Document> read_raw_documents(const std::string& path) {
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  for_each_line(path, [&](size_t lineno, const std::string& line) {
    ordered_json j = parse_line(path, lineno, line);
    if (!j.contains("id") || !j["id"].is_string()) line_error(path, lineno, "missing id");
    Document d;
    d.id = j["id"].get<std::string>();
    if (!ids.insert(d.id).second) line_error(path, lineno, "duplicate id " + d.id);
    d.source = j.value("source", std::string{});
    if (j.contains("sentences")) {
      for (auto& s : j["sentences"]) {
        d.sentences.push_back(make_sentence(s.get<std::string>()));
      }
    } else if (j.contains("text")) {
      for (auto& raw : split_sentences(j["text"].get<std::string>())) {
        d.sentences.push_back(make_sentence(std::move(raw)));
      }
    } else {
      line_error(path, lineno, "need text or sentences");
    }
    docs.push_back(std::move(d));
  });
  return docs;
}

Corpus read_corpus_file(const std::string& path) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  for_each_line(path, [&](size_t lineno, const std::string& line) {
    ordered_json j = parse_line(path, lineno, line);
    if (!j.contains("id") || !j["id"].is_string()) line_error(path, lineno, "missing id");
    if (!j.contains("sentences") || !j["sentences"].is_array()) {
      line_error(path, lineno, "missing sentences");
    }
    Document d;
    d.id = j["id"].get<std::string>();
    if (!ids.insert(d.id).second) line_error(path, lineno, "duplicate id " + d.id);
    d.source = j.value("source", std::string{});
    for (auto& s : j["sentences"]) d.sentences.push_back(make_sentence(s.get<std::string>()));
    CorpusLabels labels;
    labels.popularity = read_label_field(j, "popularity", d.size(), path, lineno);
    labels.salience_1 = read_label_field(j, "salience_1", d.size(), path, lineno);
    labels.salience_2 = read_label_field(j, "salience_2", d.size(), path, lineno);
    labels.salience_l = read_label_field(j, "salience_l", d.size(), path, lineno);
    corpus.documents.push_back(std::move(d));
    corpus.labels.push_back(std::move(labels));
  });
  return corpus;
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& d = corpus.documents[i];
    const auto& l = corpus.labels[i];
    ordered_json j;
    j["id"] = d.id;
    j["source"] = d.source;
    auto sentences = ordered_json::array();
    for (const auto& s : d.sentences) sentences.push_back(s.text);
    j["sentences"] = std::move(sentences);
    j["popularity"] = label_json(l.popularity);
    j["salience_1"] = label_json(l.salience_1);
    j["salience_2"] = label_json(l.salience_2);
    j["salience_l"] = label_json(l.salience_l);
    out << j.dump() << "\n";
  }
}

std::vector<QuerySet> read_query_file(const std::string& path) {
  std::vector<QuerySet> out;
  std::unordered_set<std::string> ids;
  for_each_line(path, [&](size_t lineno, const std::string& line) {
    ordered_json j = parse_line(path, lineno, line);
    if (!j.contains("id") || !j.contains("queries")) line_error(path, lineno, "need id and queries");
    QuerySet qs;
    qs.document_id = j["id"].get<std::string>();
    if (!ids.insert(qs.document_id).second) {
      line_error(path, lineno, "duplicate id " + qs.document_id);
    }
    for (auto& q : j["queries"]) {
      auto tokens = tokenize(q.get<std::string>());
      if (!tokens.empty()) qs.queries.push_back(std::move(tokens));
    }
    out.push_back(std::move(qs));
  });
  return out;
}

void write_query_file(const std::string& path, const std::vector<QuerySet>& queries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& qs : queries) {
    ordered_json j;
    j["id"] = qs.document_id;
    auto arr = ordered_json::array();
    for (const auto& q : qs.queries) {
      std::string joined;
      for (size_t i = 0; i < q.size(); ++i) {
        if (i) joined += ' ';
        joined += q[i];
      }
      arr.push_back(joined);
    }
    j["queries"] = std::move(arr);
    out << j.dump() << "\n";
  }
}

std::vector<SummaryRef> read_summary_file(const std::string& path) {
  std::vector<SummaryRef> out;
  std::unordered_set<std::string> ids;
  for_each_line(path, [&](size_t lineno, const std::string& line) {
    ordered_json j = parse_line(path, lineno, line);
    if (!j.contains("id") || !j.contains("summary")) line_error(path, lineno, "need id and summary");
    SummaryRef ref;
    ref.document_id = j["id"].get<std::string>();
    if (!ids.insert(ref.document_id).second) {
      line_error(path, lineno, "duplicate id " + ref.document_id);
    }
    for (auto& s : j["summary"]) {
      ref.summary_sentences.push_back(tokenize(s.get<std::string>()));
    }
    out.push_back(std::move(ref));
  });
  return out;
}

void write_summary_file(const std::string& path, const std::vector<SummaryRef>& summaries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& ref : summaries) {
    ordered_json j;
    j["id"] = ref.document_id;
    auto arr = ordered_json::array();
    for (const auto& s : ref.summary_sentences) {
      std::string joined;
      for (size_t i = 0; i < s.size(); ++i) {
        if (i) joined += ' ';
        joined += s[i];
      }
      arr.push_back(joined);
    }
    j["summary"] = std::move(arr);
    out << j.dump() << "\n";
  }
}

std::unordered_map<std::string, std::vector<bool>> read_grammar_file(const std::string& path) {
  std::unordered_map<std::string, std::vector<bool>> out;
  for_each_line(path, [&](size_t lineno, const std::string& line) {
    ordered_json j = parse_line(path, lineno, line);
    if (!j.contains("id") || !j.contains("grammatical")) {
      line_error(path, lineno, "need id and grammatical");
    }
    const std::string id = j["id"].get<std::string>();
    if (!out.emplace(id, j["grammatical"].get<std::vector<bool>>()).second) {
      line_error(path, lineno, "duplicate id " + id);
    }
  });
  return out;
}

}  // namespace popcast
