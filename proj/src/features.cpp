#include "popcast/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "popcast/tfidf.hpp"

namespace popcast {
namespace {

// capitalized = first alphabetic ASCII character is uppercase
bool capitalized(const std::string& word) {
  for (unsigned char c : word) {
    if (std::isalpha(c)) return std::isupper(c) != 0;
  }
  return false;
}

double cap_fraction(const std::string& text) {
  size_t total = 0, caps = 0;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    ++total;
    if (capitalized(text.substr(start, i - start))) ++caps;
  }
  return total > 0 ? static_cast<double>(caps) / static_cast<double>(total) : 0.0;
}

bool has_digit(const std::string& text) {
  return std::any_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool has_quote(const std::string& text) {
  if (text.find('"') != std::string::npos) return true;
  for (const char* q : {"“", "”", "«", "»"}) {
    if (text.find(q) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> kNames = {
      "relative_position", "inverse_position",  "token_count",
      "relative_token_count", "tfidf_norm",     "centroid_cosine",
      "mean_pair_cosine",  "max_pair_cosine",   "capitalized_fraction",
      "contains_digit",    "contains_quote"};
  return kNames;
}

FeatureMatrix extract_features(const Document& doc) {
  const size_t n = doc.size();
  FeatureMatrix fm;
  fm.document_id = doc.id;
  fm.rows = n;
  fm.data.assign(n * kFeatureCount, 0.0);
  if (n == 0) return fm;

  std::vector<std::vector<std::string>> units;
  units.reserve(n);
  for (const auto& s : doc.sentences) units.push_back(s.tokens);
  const TfIdfModel model = TfIdfModel::fit(units);

  std::vector<SparseVector> vecs(n);
  for (size_t i = 0; i < n; ++i) vecs[i] = model.vectorize(doc.sentences[i].tokens);

  // centroid = mean of sentence vectors
  std::map<uint64_t, double> cent;
  for (const auto& v : vecs) {
    for (const auto& [idx, w] : v.entries) cent[idx] += w / static_cast<double>(n);
  }
  SparseVector centroid;
  centroid.entries.assign(cent.begin(), cent.end());

  size_t max_tokens = 1;
  for (const auto& s : doc.sentences) max_tokens = std::max(max_tokens, s.tokens.size());

  for (size_t i = 0; i < n; ++i) {
    const auto& s = doc.sentences[i];
    double mean_cos = 0.0, max_cos = 0.0;
    if (n > 1) {
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double c = cosine(vecs[i], vecs[j]);
        mean_cos += c;
        max_cos = std::max(max_cos, c);
      }
      mean_cos /= static_cast<double>(n - 1);
    }
    fm.at(i, 0) = static_cast<double>(i + 1) / static_cast<double>(n);
    fm.at(i, 1) = 1.0 / static_cast<double>(i + 1);
    fm.at(i, 2) = static_cast<double>(s.tokens.size());
    fm.at(i, 3) = static_cast<double>(s.tokens.size()) / static_cast<double>(max_tokens);
    fm.at(i, 4) = vecs[i].norm();
    fm.at(i, 5) = cosine(vecs[i], centroid);
    fm.at(i, 6) = mean_cos;
    fm.at(i, 7) = max_cos;
    fm.at(i, 8) = cap_fraction(s.text);
    fm.at(i, 9) = has_digit(s.text) ? 1.0 : 0.0;
    fm.at(i, 10) = has_quote(s.text) ? 1.0 : 0.0;
  }
  return fm;
}

}  // namespace popcast
