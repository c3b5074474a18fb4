#include "popcast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "popcast/rng.hpp"
#include "popcast/text.hpp"

namespace popcast {
namespace {

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> kWords = {
      "the",    "market", "report",  "week",    "group",   "city",   "plan",
      "chief",  "deal",   "share",   "price",   "board",   "talks",  "growth",
      "policy", "sector", "output",  "demand",  "supply",  "budget", "agency",
      "review", "record", "quarter", "economy", "banks",   "trade",  "launch",
      "survey", "season", "region",  "council", "product", "rival",  "merger"};
  return kWords;
}

std::string cap_first(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

struct PlannedSentence {
  std::vector<std::string> tokens;
  double topic_affinity = 0.0;  // 0..1
  bool has_digit = false;
};

PlannedSentence plan_sentence(Rng& rng, const std::vector<std::string>& topic_pool) {
  PlannedSentence p;
  const int length = rng.int_in(6, 18);
  const int topic_slots = rng.int_in(0, 4);
  p.topic_affinity = topic_slots / 4.0;
  p.has_digit = rng.uniform() < 0.25;

  const auto& filler = filler_words();
  for (int k = 0; k < topic_slots; ++k) {
    p.tokens.push_back(topic_pool[rng.below(topic_pool.size())]);
  }
  if (p.has_digit) {
    p.tokens.push_back(std::to_string(rng.int_in(2, 97)));
  }
  while (static_cast<int>(p.tokens.size()) < length) {
    p.tokens.push_back(filler[rng.below(filler.size())]);
  }
  rng.shuffle(p.tokens);
  return p;
}

std::string render_text(const std::vector<std::string>& tokens) {
  std::string text;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) text += ' ';
    text += i == 0 ? cap_first(tokens[i]) : tokens[i];
  }
  text += '.';
  return text;
}

size_t sample_index(Rng& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = rng.uniform() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u <= 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace

std::vector<SyntheticDoc> generate_synthetic_corpus(const SynthConfig& cfg) {
  if (cfg.task_correlation < 0.0 || cfg.task_correlation > 1.0) {
    throw std::invalid_argument("generate_synthetic_corpus: task_correlation must be in [0,1]");
  }
  Rng rng(cfg.seed);
  std::vector<SyntheticDoc> out;
  out.reserve(cfg.n_docs);

  for (size_t d = 0; d < cfg.n_docs; ++d) {
    SyntheticDoc sd;
    sd.doc.id = "synth-" + std::to_string(cfg.seed) + "-" + std::to_string(d);
    sd.doc.source = "synthetic";

    // per-document topic vocabulary, disjoint across documents
    std::vector<std::string> topic_pool;
    for (int k = 0; k < 6; ++k) {
      topic_pool.push_back("topic" + std::to_string(d) + "x" + std::to_string(k));
    }

    const int n = rng.int_in(5, 40);
    std::vector<PlannedSentence> planned;
    planned.reserve(n);
    for (int i = 0; i < n; ++i) planned.push_back(plan_sentence(rng, topic_pool));

    // occasional exact duplicate sentence, mirroring near-identical news wire copy
    if (n >= 6 && rng.uniform() < cfg.duplicate_probability) {
      const size_t src = rng.below(static_cast<uint64_t>(n - 1));
      planned[src + 1] = planned[src];
    }

    // salience concentration: position pyramid with planted content effects
    std::vector<double> concentration(n);
    for (int i = 0; i < n; ++i) {
      const auto& p = planned[i];
      const double pos_prior = 1.0 / std::sqrt(static_cast<double>(i + 1));
      const double length_norm = std::min<double>(p.tokens.size(), 15.0) / 15.0;
      double u = pos_prior;
      u *= 0.3 + 1.6 * p.topic_affinity;
      u *= 0.75 + 0.5 * length_norm;
      if (p.has_digit) u *= 1.25;
      concentration[i] = u;
    }
    double conc_sum = 0.0;
    for (double u : concentration) conc_sum += u;
    const double alpha_total = 80.0;
    std::vector<double> alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = alpha_total * concentration[i] / conc_sum;

    sd.salience = rng.dirichlet(alpha);

    std::vector<double> noise = rng.dirichlet(std::vector<double>(n, 1.5));
    sd.popularity.resize(n);
    double pop_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sd.popularity[i] =
          cfg.task_correlation * sd.salience[i] + (1.0 - cfg.task_correlation) * noise[i];
      pop_sum += sd.popularity[i];
    }
    for (auto& v : sd.popularity) v /= pop_sum;

    for (int i = 0; i < n; ++i) {
      Sentence s;
      s.text = render_text(planned[i].tokens);
      s.tokens = tokenize(s.text);
      sd.doc.sentences.push_back(std::move(s));
    }

    // summary: top-3 latent-salience sentences verbatim, document order
    std::vector<size_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return sd.salience[a] > sd.salience[b]; });
    std::vector<size_t> top(order.begin(), order.begin() + std::min<size_t>(3, order.size()));
    std::sort(top.begin(), top.end());
    sd.summary.document_id = sd.doc.id;
    for (size_t idx : top) sd.summary.summary_sentences.push_back(sd.doc.sentences[idx].tokens);

    // queries: contiguous chunks of sentences drawn by popularity
    sd.queries.document_id = sd.doc.id;
    const int n_queries = 4 + n / 6;
    for (int q = 0; q < n_queries; ++q) {
      const size_t src = sample_index(rng, sd.popularity);
      const auto& toks = sd.doc.sentences[src].tokens;
      const size_t len = std::min<size_t>(toks.size(), static_cast<size_t>(rng.int_in(3, 6)));
      const size_t start = toks.size() > len ? rng.below(toks.size() - len + 1) : 0;
      sd.queries.queries.emplace_back(toks.begin() + start, toks.begin() + start + len);
    }

    out.push_back(std::move(sd));
  }
  return out;
}

}  // namespace popcast
