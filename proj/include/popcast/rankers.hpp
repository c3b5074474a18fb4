#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "popcast/corpus.hpp"

namespace popcast {

// Dense symmetric similarity matrix, zero diagonal, entries >= 0. n <= 100
// after corpus filtering, so dense storage is fine.
struct SimilarityGraph {
  size_t n = 0;
  std::vector<double> weights;  // row-major n*n

  explicit SimilarityGraph(size_t n_) : n(n_), weights(n_ * n_, 0.0) {}
  double& at(size_t i, size_t j) { return weights[i * n + j]; }
  double at(size_t i, size_t j) const { return weights[i * n + j]; }
  void set_symmetric(size_t i, size_t j, double w) {
    at(i, j) = w;
    at(j, i) = w;
  }
};

struct ScoreVector {
  std::string document_id;
  std::string scorer;
  std::vector<double> values;
};

struct PageRankConfig {
  double damping = 0.85;
  double tol = 1e-8;
  int max_iter = 10000;
};

// Thrown when power iteration fails to converge; carries the last iterate.
struct PageRankError : std::runtime_error {
  std::vector<double> last_iterate;
  int iterations;
  PageRankError(std::vector<double> it, int iters)
      : std::runtime_error("pagerank: max_iter exceeded"),
        last_iterate(std::move(it)),
        iterations(iters) {}
};

// Power iteration on column-normalized weights with uniform teleport.
// Dangling (zero-degree) nodes redistribute their mass uniformly. Converged
// when the L1 change drops below tol; the result sums to 1 within 1e-9.
std::vector<double> pagerank(const SimilarityGraph& g, const PageRankConfig& cfg = {});

// score of the i-th sentence = 1 - i/n; strictly decreasing. Index base is 1
// by default ("the i-th sentence" read ordinally); 0 gives scores in [1/n, 1].
ScoreVector position_scores(size_t n, int index_base = 1);

struct TextRankConfig {
  PageRankConfig pagerank;
};

// Edge weight |overlap(s_i, s_j)| / (log|s_i| + log|s_j|) over distinct
// shared tokens, denominator floored at 1e-6 for one-token sentences.
SimilarityGraph textrank_graph(const Document& doc);
ScoreVector textrank_scores(const Document& doc, const TextRankConfig& cfg = {});

struct LexRankConfig {
  double threshold = 0.1;  // 0 keeps continuous cosine weights
  PageRankConfig pagerank;
};

// TF-IDF cosine edges (per-document IDF over the sentences), binarized at
// the threshold when it is positive, then PageRank; scores normalized to
// sum 1.
SimilarityGraph lexrank_graph(const Document& doc, double threshold);
ScoreVector lexrank_scores(const Document& doc, const LexRankConfig& cfg = {});

// Divides by the sum; an all-zero input becomes uniform 1/N. Negative
// entries are an error.
std::vector<double> normalize_scores(const std::vector<double>& values);

}  // namespace popcast
