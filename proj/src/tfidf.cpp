#include "popcast/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "popcast/rng.hpp"

namespace popcast {

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [idx, w] : entries) s += w * w;
  return std::sqrt(s);
}

double dot(const SparseVector& u, const SparseVector& v) {
  double s = 0.0;
  auto it = u.entries.begin();
  auto jt = v.entries.begin();
  while (it != u.entries.end() && jt != v.entries.end()) {
    if (it->first == jt->first) {
      s += it->second * jt->second;
      ++it;
      ++jt;
    } else if (it->first < jt->first) {
      ++it;
    } else {
      ++jt;
    }
  }
  return s;
}

double cosine(const SparseVector& u, const SparseVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  double c = dot(u, v) / (nu * nv);
  if (c < 0.0) c = 0.0;
  if (c > 1.0) c = 1.0;
  return c;
}

TfIdfModel TfIdfModel::fit(const std::vector<std::vector<std::string>>& units) {
  if (units.empty()) throw std::invalid_argument("fit_tfidf: empty unit list");
  TfIdfModel m;
  m.unit_count_ = units.size();

  // document frequency in first-seen order so indices are deterministic
  std::unordered_map<std::string, uint32_t> df;
  std::vector<std::string> order;
  for (const auto& unit : units) {
    std::unordered_map<std::string, bool> seen;
    for (const auto& tok : unit) {
      if (seen.emplace(tok, true).second) {
        auto [it, inserted] = df.emplace(tok, 0u);
        if (inserted) order.push_back(tok);
        ++it->second;
      }
    }
  }

  const double u = static_cast<double>(m.unit_count_);
  m.idf_.reserve(order.size());
  uint64_t fp = 14695981039346656037ULL;
  for (uint32_t i = 0; i < order.size(); ++i) {
    const auto& tok = order[i];
    m.vocabulary_.emplace(tok, i);
    m.idf_.push_back(std::log((1.0 + u) / (1.0 + df[tok])) + 1.0);
    fp = fnv1a(tok, fp);
    const uint32_t d = df[tok];
    fp = fnv1a(&d, sizeof(d), fp);
  }
  m.oov_idf_ = std::log(1.0 + u) + 1.0;
  fp = fnv1a(&m.unit_count_, sizeof(m.unit_count_), fp);
  m.fingerprint_ = fp;
  return m;
}

SparseVector TfIdfModel::vectorize(const std::vector<std::string>& tokens) const {
  std::map<uint64_t, double> acc;  // ordered -> sorted entries
  for (const auto& tok : tokens) {
    auto it = vocabulary_.find(tok);
    if (it != vocabulary_.end()) {
      acc[it->second] += idf_[it->second];
    } else {
      const uint64_t idx = (1ULL << 63) | fnv1a(tok);
      acc[idx] += oov_idf_;
    }
  }
  SparseVector v;
  v.entries.reserve(acc.size());
  for (const auto& [idx, w] : acc) {
    if (w != 0.0) v.entries.emplace_back(idx, w);
  }
  return v;
}

double TfIdfModel::idf(const std::string& token) const {
  auto it = vocabulary_.find(token);
  return it == vocabulary_.end() ? oov_idf_ : idf_[it->second];
}

}  // namespace popcast
