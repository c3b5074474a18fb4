#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace popcast {

// Sparse non-negative vector, entries sorted by index, zeros omitted.
struct SparseVector {
  std::vector<std::pair<uint64_t, double>> entries;

  double norm() const;
  bool empty() const { return entries.empty(); }
};

double dot(const SparseVector& u, const SparseVector& v);

// cosine in [0, 1] for non-negative weights; 0 if either vector is zero
double cosine(const SparseVector& u, const SparseVector& v);

// Immutable after fit; safe for concurrent reads.
// idf(t) = ln((1+U)/(1+df(t))) + 1 over the fitted units.
class TfIdfModel {
 public:
  static TfIdfModel fit(const std::vector<std::vector<std::string>>& units);

  // weight(t) = tf(t) * idf(t). Out-of-vocabulary tokens take the df=0
  // smoothed idf and a hashed index above the vocabulary range so distinct
  // unseen tokens never collide with fitted ones.
  SparseVector vectorize(const std::vector<std::string>& tokens) const;

  size_t vocabulary_size() const { return vocabulary_.size(); }
  size_t unit_count() const { return unit_count_; }
  double idf(const std::string& token) const;
  uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::unordered_map<std::string, uint32_t> vocabulary_;
  std::vector<double> idf_;
  double oov_idf_ = 0.0;
  size_t unit_count_ = 0;
  uint64_t fingerprint_ = 0;
};

}  // namespace popcast
