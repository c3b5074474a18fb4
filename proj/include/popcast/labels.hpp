#pragma once

#include <optional>
#include <string>
#include <vector>

#include "popcast/corpus.hpp"
#include "popcast/tfidf.hpp"

namespace popcast {

// Normalized per-sentence labels: values >= 0, sum to 1 within 1e-9.
struct LabelVector {
  std::string document_id;
  LabelTask task = LabelTask::Popularity;
  std::vector<double> values;
  bool uniform_fallback = false;  // set when a zero denominator forced 1/N
};

enum class RougeMode { F1, Recall };

// Clipped n-gram overlap, n in {1, 2}; 0 if either side has no n-grams.
double rouge_n(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference, int n,
               RougeMode mode = RougeMode::F1);

// Longest-common-subsequence overlap.
double rouge_l(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference,
               RougeMode mode = RougeMode::F1);

// P_i proportional to sum over queries of cosine(tfidf(q_j), tfidf(s_i)).
// IDF is fit per document over {sentences} u {queries} unless an external
// model (e.g. corpus-level) is supplied. nullopt when |Q| = 0 or every
// similarity is zero: the document is unlabelable for popularity.
std::optional<LabelVector> popularity_labels(const Document& doc, const QuerySet& queries,
                                             const TfIdfModel* model = nullptr);

// Sentence vs. the summary as one concatenated token sequence, ROUGE variant
// per task (S1/S2/SL), normalized across the document. A zero sum falls back
// to uniform 1/N with uniform_fallback set.
LabelVector salience_labels(const Document& doc, const SummaryRef& ref, LabelTask variant,
                            RougeMode mode = RougeMode::F1);

}  // namespace popcast
