#include "popcast/pipeline.hpp"

#include <fstream>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "popcast/parallel.hpp"

namespace popcast {

using ordered_json = nlohmann::ordered_json;

LabelRunResult label_corpus(Corpus& corpus, LabelTask task,
                            const std::vector<QuerySet>& queries,
                            const std::vector<SummaryRef>& summaries,
                            const LabelOptions& options) {
  LabelRunResult result;
  const size_t n = corpus.documents.size();

  std::optional<TfIdfModel> corpus_model;
  if (task == LabelTask::Popularity && options.corpus_idf) {
    std::vector<std::vector<std::string>> units;
    for (const auto& d : corpus.documents) {
      for (const auto& s : d.sentences) units.push_back(s.tokens);
    }
    for (const auto& qs : queries) {
      for (const auto& q : qs.queries) units.push_back(q);
    }
    corpus_model = TfIdfModel::fit(units);
  }

  std::unordered_map<std::string, const QuerySet*> query_by_id;
  for (const auto& qs : queries) query_by_id.emplace(qs.document_id, &qs);
  std::unordered_map<std::string, const SummaryRef*> summary_by_id;
  for (const auto& ref : summaries) summary_by_id.emplace(ref.document_id, &ref);

  std::vector<std::optional<LabelVector>> computed(n);
  std::vector<char> missing_input(n, 0);

  parallel_for(n, options.jobs, [&](size_t i) {
    const Document& doc = corpus.documents[i];
    if (task == LabelTask::Popularity) {
      auto it = query_by_id.find(doc.id);
      if (it == query_by_id.end()) {
        missing_input[i] = 1;
        return;
      }
      computed[i] = popularity_labels(doc, *it->second,
                                      corpus_model ? &*corpus_model : nullptr);
    } else {
      auto it = summary_by_id.find(doc.id);
      if (it == summary_by_id.end()) {
        missing_input[i] = 1;
        return;
      }
      computed[i] = salience_labels(doc, *it->second, task, options.rouge_mode);
    }
  });

  for (size_t i = 0; i < n; ++i) {
    const std::string& id = corpus.documents[i].id;
    if (missing_input[i] || !computed[i]) {
      result.unlabelable.push_back(id);
      continue;
    }
    if (computed[i]->uniform_fallback) result.uniform_fallback.push_back(id);
    corpus.labels[i].get(task) = std::move(computed[i]->values);
    ++result.labeled;
  }
  return result;
}

std::vector<ScoreVector> rank_corpus(const std::vector<Document>& docs,
                                     const RankOptions& options) {
  if (options.scorer == "model" && options.model == nullptr) {
    throw std::invalid_argument("rank_corpus: scorer 'model' needs a model");
  }
  PageRankConfig pr{options.damping, options.tol, options.max_iter};

  DocumentScorer score_one = [&](const Document& d) -> std::vector<double> {
    if (options.scorer == "position") {
      return position_scores(d.size(), options.position_base).values;
    }
    if (options.scorer == "textrank") {
      TextRankConfig cfg;
      cfg.pagerank = pr;
      return textrank_scores(d, cfg).values;
    }
    if (options.scorer == "lexrank") {
      LexRankConfig cfg;
      cfg.threshold = options.lexrank_threshold;
      cfg.pagerank = pr;
      return lexrank_scores(d, cfg).values;
    }
    if (options.scorer == "model") {
      return forward(*options.model, extract_features(d));
    }
    throw std::invalid_argument("rank_corpus: unknown scorer " + options.scorer);
  };

  std::vector<ScoreVector> out(docs.size());
  parallel_for(docs.size(), options.jobs, [&](size_t i) {
    ScoreVector sv;
    sv.document_id = docs[i].id;
    sv.scorer = options.scorer;
    if (options.window > 0 && docs[i].size() > options.window) {
      sv.values = windowed_score(score_one, docs[i], {options.window, options.stride});
    } else {
      sv.values = score_one(docs[i]);
    }
    out[i] = std::move(sv);
  });
  return out;
}

std::vector<LabelVector> collect_labels(const Corpus& corpus, LabelTask task,
                                        std::vector<std::string>* skipped) {
  std::vector<LabelVector> out;
  for (size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& maybe = corpus.labels[i].get(task);
    if (!maybe) {
      if (skipped) skipped->push_back(corpus.documents[i].id);
      continue;
    }
    LabelVector lv;
    lv.document_id = corpus.documents[i].id;
    lv.task = task;
    lv.values = *maybe;
    out.push_back(std::move(lv));
  }
  return out;
}

std::vector<TrainExample> make_examples(const Corpus& corpus, LabelTask task, size_t jobs) {
  std::vector<size_t> labeled;
  for (size_t i = 0; i < corpus.documents.size(); ++i) {
    if (corpus.labels[i].get(task)) labeled.push_back(i);
  }
  std::vector<TrainExample> out(labeled.size());
  parallel_for(labeled.size(), jobs, [&](size_t k) {
    const size_t i = labeled[k];
    out[k].features = extract_features(corpus.documents[i]);
    out[k].labels = *corpus.labels[i].get(task);
  });
  return out;
}

void split_examples(const Corpus& corpus, LabelTask task,
                    std::vector<TrainExample>& train_out,
                    std::vector<TrainExample>& validation_out,
                    std::vector<TrainExample>& test_out, size_t jobs) {
  std::vector<TrainExample> all = make_examples(corpus, task, jobs);
  for (auto& ex : all) {
    switch (split_bucket(ex.features.document_id)) {
      case SplitBucket::Train: train_out.push_back(std::move(ex)); break;
      case SplitBucket::Validation: validation_out.push_back(std::move(ex)); break;
      case SplitBucket::Test: test_out.push_back(std::move(ex)); break;
    }
  }
}

std::vector<ScoreVector> read_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ScoreVector> out;
  std::unordered_set<std::string> ids;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed JSON object");
    }
    ScoreVector sv;
    sv.document_id = j.at("id").get<std::string>();
    if (!ids.insert(sv.document_id).second) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": duplicate id " +
                               sv.document_id);
    }
    sv.scorer = j.value("scorer", std::string{});
    sv.values = j.at("scores").get<std::vector<double>>();
    out.push_back(std::move(sv));
  }
  return out;
}

void write_score_file(const std::string& path, const std::vector<ScoreVector>& scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& sv : scores) {
    ordered_json j;
    j["id"] = sv.document_id;
    j["scorer"] = sv.scorer;
    j["scores"] = sv.values;
    out << j.dump() << "\n";
  }
}

SyntheticFiles render_synthetic(const std::vector<SyntheticDoc>& docs) {
  SyntheticFiles files;
  for (const auto& sd : docs) {
    files.raw.documents.push_back(sd.doc);
    files.raw.labels.emplace_back();
    files.latent.documents.push_back(sd.doc);
    CorpusLabels latent;
    latent.popularity = sd.popularity;
    latent.salience_1 = sd.salience;
    latent.salience_2 = sd.salience;
    latent.salience_l = sd.salience;
    files.latent.labels.push_back(std::move(latent));
    files.queries.push_back(sd.queries);
    files.summaries.push_back(sd.summary);
  }
  return files;
}

}  // namespace popcast
