#pragma once

#include <cstdint>
#include <vector>

#include "popcast/corpus.hpp"

namespace popcast {

// One generated document with its query set, reference summary, and the
// latent labels the generator drew. The latent salience is position-biased
// with planted content effects (topic density, length, digits) so that the
// feature regressor can out-rank a pure position baseline; popularity mixes
// salience with independent noise at the requested correlation.
struct SyntheticDoc {
  Document doc;
  QuerySet queries;
  SummaryRef summary;
  std::vector<double> popularity;  // latent, sums to 1
  std::vector<double> salience;    // latent, sums to 1
};

struct SynthConfig {
  uint64_t seed = 0;
  size_t n_docs = 100;
  double task_correlation = 0.7;  // rho_task in [0, 1]
  double duplicate_probability = 0.1;  // chance a document carries an exact duplicate sentence
};

// Deterministic for a given config: documents of 5-40 template sentences,
// salience from a position-biased Dirichlet, popularity =
// normalize(rho * salience + (1 - rho) * noise), summaries from the
// top-salience sentences, queries sampled from high-popularity sentences.
std::vector<SyntheticDoc> generate_synthetic_corpus(const SynthConfig& cfg);

}  // namespace popcast
