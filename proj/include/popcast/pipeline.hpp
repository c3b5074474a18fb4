#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "popcast/corpus.hpp"
#include "popcast/labels.hpp"
#include "popcast/metrics.hpp"
#include "popcast/rankers.hpp"
#include "popcast/regressor.hpp"
#include "popcast/synth.hpp"

namespace popcast {

// Mid-level plumbing shared by the CLI and the Python module: whole-corpus
// labeling, ranking, training, and evaluation over in-memory corpora.

struct LabelRunResult {
  size_t labeled = 0;
  std::vector<std::string> unlabelable;       // popularity zero-denominator documents
  std::vector<std::string> uniform_fallback;  // salience uniform-label documents
};

struct LabelOptions {
  RougeMode rouge_mode = RougeMode::F1;
  bool corpus_idf = false;  // fit IDF over the whole corpus instead of per document
  size_t jobs = 1;
};

// Fills corpus.labels for the task in place.
LabelRunResult label_corpus(Corpus& corpus, LabelTask task,
                            const std::vector<QuerySet>& queries,
                            const std::vector<SummaryRef>& summaries,
                            const LabelOptions& options = {});

struct RankOptions {
  std::string scorer = "position";  // position | textrank | lexrank | model
  int position_base = 1;
  double lexrank_threshold = 0.1;
  double damping = 0.85;
  double tol = 1e-8;
  int max_iter = 10000;
  size_t window = 0;  // 0 = score whole documents
  size_t stride = 10;
  const RegressorModel* model = nullptr;  // required for scorer == "model"
  size_t jobs = 1;
};

std::vector<ScoreVector> rank_corpus(const std::vector<Document>& docs,
                                     const RankOptions& options);

// Labels for one task drawn out of a corpus; documents without that label are
// skipped (ids returned through *skipped when given).
std::vector<LabelVector> collect_labels(const Corpus& corpus, LabelTask task,
                                        std::vector<std::string>* skipped = nullptr);

std::vector<TrainExample> make_examples(const Corpus& corpus, LabelTask task, size_t jobs = 1);

// Bucket assignment via split_bucket over document ids.
void split_examples(const Corpus& corpus, LabelTask task,
                    std::vector<TrainExample>& train_out,
                    std::vector<TrainExample>& validation_out,
                    std::vector<TrainExample>& test_out, size_t jobs = 1);

// scores JSONL: {"id": str, "scorer": str, "scores": [float]}
std::vector<ScoreVector> read_score_file(const std::string& path);
void write_score_file(const std::string& path, const std::vector<ScoreVector>& scores);

// Synthetic corpus rendered as pipeline inputs. Latent labels go into a
// parallel Corpus copy for direct experiments.
struct SyntheticFiles {
  Corpus raw;                        // unlabeled canonical corpus
  Corpus latent;                     // same documents with latent labels attached
  std::vector<QuerySet> queries;
  std::vector<SummaryRef> summaries;
};

SyntheticFiles render_synthetic(const std::vector<SyntheticDoc>& docs);

}  // namespace popcast
