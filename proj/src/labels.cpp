#include "popcast/labels.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace popcast {
namespace {

double combine(double matches, double cand_total, double ref_total, RougeMode mode) {
  const double recall = ref_total > 0 ? matches / ref_total : 0.0;
  if (mode == RougeMode::Recall) return recall;
  const double precision = cand_total > 0 ? matches / cand_total : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const size_t m = a.size(), n = b.size();
  std::vector<size_t> prev(n + 1, 0), cur(n + 1, 0);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

std::vector<std::string> concat_summary(const SummaryRef& ref) {
  std::vector<std::string> all;
  for (const auto& s : ref.summary_sentences) all.insert(all.end(), s.begin(), s.end());
  return all;
}

}  // namespace

double rouge_n(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference, int n, RougeMode mode) {
  if (n != 1 && n != 2) throw std::invalid_argument("rouge_n: n must be 1 or 2");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  if (cand.empty() || ref.empty()) return 0.0;
  double matches = 0.0, cand_total = 0.0, ref_total = 0.0;
  for (const auto& [g, c] : cand) {
    cand_total += c;
    auto it = ref.find(g);
    if (it != ref.end()) matches += std::min(c, it->second);  // clipped
  }
  for (const auto& [g, c] : ref) ref_total += c;
  return combine(matches, cand_total, ref_total, mode);
}

double rouge_l(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference, RougeMode mode) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  return combine(lcs, static_cast<double>(candidate.size()),
                 static_cast<double>(reference.size()), mode);
}

std::optional<LabelVector> popularity_labels(const Document& doc, const QuerySet& queries,
                                             const TfIdfModel* model) {
  if (queries.document_id != doc.id) {
    throw std::invalid_argument("popularity_labels: query set " + queries.document_id +
                                " does not match document " + doc.id);
  }
  if (queries.queries.empty()) return std::nullopt;

  TfIdfModel local;
  if (!model) {
    std::vector<std::vector<std::string>> units;
    units.reserve(doc.size() + queries.queries.size());
    for (const auto& s : doc.sentences) units.push_back(s.tokens);
    for (const auto& q : queries.queries) units.push_back(q);
    local = TfIdfModel::fit(units);
    model = &local;
  }

  std::vector<SparseVector> query_vecs;
  query_vecs.reserve(queries.queries.size());
  for (const auto& q : queries.queries) query_vecs.push_back(model->vectorize(q));

  LabelVector out;
  out.document_id = doc.id;
  out.task = LabelTask::Popularity;
  out.values.resize(doc.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < doc.size(); ++i) {
    const SparseVector sv = model->vectorize(doc.sentences[i].tokens);
    double base = 0.0;
    for (const auto& qv : query_vecs) base += cosine(qv, sv);
    out.values[i] = base;
    total += base;
  }
  if (total == 0.0) return std::nullopt;
  for (auto& v : out.values) v /= total;
  return out;
}

LabelVector salience_labels(const Document& doc, const SummaryRef& ref, LabelTask variant,
                            RougeMode mode) {
  if (ref.document_id != doc.id) {
    throw std::invalid_argument("salience_labels: summary " + ref.document_id +
                                " does not match document " + doc.id);
  }
  if (variant == LabelTask::Popularity) {
    throw std::invalid_argument("salience_labels: variant must be S1, S2, or SL");
  }
  const std::vector<std::string> summary = concat_summary(ref);

  LabelVector out;
  out.document_id = doc.id;
  out.task = variant;
  out.values.resize(doc.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& toks = doc.sentences[i].tokens;
    double raw = 0.0;
    switch (variant) {
      case LabelTask::S1: raw = rouge_n(toks, summary, 1, mode); break;
      case LabelTask::S2: raw = rouge_n(toks, summary, 2, mode); break;
      case LabelTask::SL: raw = rouge_l(toks, summary, mode); break;
      case LabelTask::Popularity: break;
    }
    out.values[i] = raw;
    total += raw;
  }
  if (total == 0.0) {
    const double u = doc.size() > 0 ? 1.0 / static_cast<double>(doc.size()) : 0.0;
    for (auto& v : out.values) v = u;
    out.uniform_fallback = true;
  } else {
    for (auto& v : out.values) v /= total;
  }
  return out;
}

}  // namespace popcast
