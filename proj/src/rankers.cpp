#include "popcast/rankers.hpp"

#include <cmath>
#include <unordered_set>

#include "popcast/tfidf.hpp"

namespace popcast {

std::vector<double> pagerank(const SimilarityGraph& g, const PageRankConfig& cfg) {
  const size_t n = g.n;
  if (n == 0) return {};
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0)) {
    throw std::invalid_argument("pagerank: damping must be in (0,1)");
  }
  const double d = cfg.damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);

  std::vector<double> degree(n, 0.0);  // column sums; symmetric, so row sums too
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) degree[j] += g.at(i, j);
  }

  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    double dangling = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (degree[j] == 0.0) dangling += v[j];
    }
    const double spread = d * dangling / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (degree[j] > 0.0) acc += g.at(i, j) / degree[j] * v[j];
      }
      next[i] = d * acc + spread + teleport;
    }
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - v[i]);
    v.swap(next);
    if (delta < cfg.tol) {
      // renormalize away accumulated rounding
      double sum = 0.0;
      for (double x : v) sum += x;
      for (auto& x : v) x /= sum;
      return v;
    }
  }
  throw PageRankError(std::move(v), cfg.max_iter);
}

ScoreVector position_scores(size_t n, int index_base) {
  if (n < 1) throw std::invalid_argument("position_scores: n must be >= 1");
  ScoreVector out;
  out.scorer = "position";
  out.values.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double rank = static_cast<double>(i) + (index_base == 0 ? 0.0 : 1.0);
    out.values[i] = 1.0 - rank / static_cast<double>(n);
  }
  return out;
}

SimilarityGraph textrank_graph(const Document& doc) {
  const size_t n = doc.size();
  SimilarityGraph g(n);
  std::vector<std::unordered_set<std::string>> sets(n);
  for (size_t i = 0; i < n; ++i) {
    sets[i].insert(doc.sentences[i].tokens.begin(), doc.sentences[i].tokens.end());
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      size_t overlap = 0;
      const auto& small = sets[i].size() <= sets[j].size() ? sets[i] : sets[j];
      const auto& large = sets[i].size() <= sets[j].size() ? sets[j] : sets[i];
      for (const auto& t : small) overlap += large.count(t);
      if (overlap == 0) continue;
      const double len_i = static_cast<double>(doc.sentences[i].tokens.size());
      const double len_j = static_cast<double>(doc.sentences[j].tokens.size());
      const double denom = std::max(std::log(len_i) + std::log(len_j), 1e-6);
      g.set_symmetric(i, j, static_cast<double>(overlap) / denom);
    }
  }
  return g;
}

ScoreVector textrank_scores(const Document& doc, const TextRankConfig& cfg) {
  ScoreVector out;
  out.document_id = doc.id;
  out.scorer = "textrank";
  out.values = pagerank(textrank_graph(doc), cfg.pagerank);
  return out;
}

SimilarityGraph lexrank_graph(const Document& doc, double threshold) {
  const size_t n = doc.size();
  std::vector<std::vector<std::string>> units;
  units.reserve(n);
  for (const auto& s : doc.sentences) units.push_back(s.tokens);
  const TfIdfModel model = TfIdfModel::fit(units);
  std::vector<SparseVector> vecs;
  vecs.reserve(n);
  for (const auto& s : doc.sentences) vecs.push_back(model.vectorize(s.tokens));

  SimilarityGraph g(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double c = cosine(vecs[i], vecs[j]);
      if (threshold > 0.0) {
        if (c > threshold) g.set_symmetric(i, j, 1.0);
      } else if (c > 0.0) {
        g.set_symmetric(i, j, c);
      }
    }
  }
  return g;
}

ScoreVector lexrank_scores(const Document& doc, const LexRankConfig& cfg) {
  ScoreVector out;
  out.document_id = doc.id;
  out.scorer = "lexrank";
  out.values = normalize_scores(pagerank(lexrank_graph(doc, cfg.threshold), cfg.pagerank));
  return out;
}

std::vector<double> normalize_scores(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) throw std::invalid_argument("normalize_scores: negative value");
    sum += v;
  }
  std::vector<double> out(values.size());
  if (sum == 0.0) {
    const double u = values.empty() ? 0.0 : 1.0 / static_cast<double>(values.size());
    for (auto& v : out) v = u;
  } else {
    for (size_t i = 0; i < values.size(); ++i) out[i] = values[i] / sum;
  }
  return out;
}

}  // namespace popcast
