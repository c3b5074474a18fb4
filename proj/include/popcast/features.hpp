#pragma once

#include <array>
#include <string>
#include <vector>

#include "popcast/corpus.hpp"

namespace popcast {

inline constexpr size_t kFeatureCount = 11;

// Fixed order; new features append, never reorder (model files store names).
const std::array<std::string, kFeatureCount>& feature_names();

struct FeatureMatrix {
  std::string document_id;
  size_t rows = 0;
  size_t cols = kFeatureCount;
  std::vector<double> data;  // row-major rows x cols

  double at(size_t i, size_t f) const { return data[i * cols + f]; }
  double& at(size_t i, size_t f) { return data[i * cols + f]; }
};

// Per sentence (1-based position i, document of N sentences):
//   0 relative position i/N
//   1 1/i
//   2 token count
//   3 token count / max token count in doc
//   4 TF-IDF L2 norm (per-document IDF over the sentences)
//   5 cosine to the document centroid vector
//   6 mean cosine to all other sentences (0 when N = 1)
//   7 max cosine to any other sentence (0 when N = 1)
//   8 fraction of capitalized source tokens
//   9 contains-digit indicator
//  10 quote-mark indicator
FeatureMatrix extract_features(const Document& doc);

}  // namespace popcast
