#include "popcast/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "popcast/rng.hpp"

namespace popcast {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kModelSchemaVersion = 1;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> standardize_row(const RegressorModel& m, const FeatureMatrix& f, size_t row) {
  std::vector<double> x(m.input_dim);
  for (size_t k = 0; k < m.input_dim; ++k) {
    x[k] = (f.at(row, k) - m.feat_mean[k]) / m.feat_std[k];
  }
  return x;
}

struct ForwardCache {
  std::vector<double> x;       // standardized input
  std::vector<double> hidden;  // tanh activations
  double pred = 0.0;
};

ForwardCache forward_row(const RegressorModel& m, const FeatureMatrix& f, size_t row) {
  ForwardCache c;
  c.x = standardize_row(m, f, row);
  c.hidden.resize(m.hidden_dim);
  double z2 = m.b2;
  for (size_t h = 0; h < m.hidden_dim; ++h) {
    double z1 = m.b1[h];
    const double* w_row = &m.w1[h * m.input_dim];
    for (size_t k = 0; k < m.input_dim; ++k) z1 += w_row[k] * c.x[k];
    c.hidden[h] = std::tanh(z1);
    z2 += m.w2[h] * c.hidden[h];
  }
  c.pred = sigmoid(z2);
  return c;
}

void compute_standardization(RegressorModel& m, const std::vector<TrainExample>& examples) {
  m.feat_mean.assign(m.input_dim, 0.0);
  m.feat_std.assign(m.input_dim, 0.0);
  size_t total = 0;
  for (const auto& ex : examples) total += ex.features.rows;
  if (total == 0) {
    std::fill(m.feat_std.begin(), m.feat_std.end(), 1.0);
    return;
  }
  for (const auto& ex : examples) {
    for (size_t i = 0; i < ex.features.rows; ++i) {
      for (size_t k = 0; k < m.input_dim; ++k) m.feat_mean[k] += ex.features.at(i, k);
    }
  }
  for (auto& v : m.feat_mean) v /= static_cast<double>(total);
  for (const auto& ex : examples) {
    for (size_t i = 0; i < ex.features.rows; ++i) {
      for (size_t k = 0; k < m.input_dim; ++k) {
        const double d = ex.features.at(i, k) - m.feat_mean[k];
        m.feat_std[k] += d * d;
      }
    }
  }
  for (auto& v : m.feat_std) {
    v = std::sqrt(v / static_cast<double>(total));
    if (v < 1e-12) v = 1.0;  // constant feature
  }
}

double dataset_loss(const RegressorModel& m, const std::vector<TrainExample>& set) {
  if (set.empty()) return 0.0;
  std::vector<const TrainExample*> all;
  all.reserve(set.size());
  for (const auto& ex : set) all.push_back(&ex);
  return batch_loss(m, all);
}

}  // namespace

RegressorModel RegressorModel::random_init(size_t input_dim, size_t hidden_dim, uint64_t seed) {
  RegressorModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.seed = seed;
  Rng rng(seed);
  const double scale1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double scale2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  m.w1.resize(hidden_dim * input_dim);
  for (auto& w : m.w1) w = rng.uniform(-scale1, scale1);
  m.b1.assign(hidden_dim, 0.0);
  m.w2.resize(hidden_dim);
  for (auto& w : m.w2) w = rng.uniform(-scale2, scale2);
  m.b2 = 0.0;
  return m;
}

std::vector<double> RegressorModel::flatten() const {
  std::vector<double> p;
  p.reserve(parameter_count());
  p.insert(p.end(), w1.begin(), w1.end());
  p.insert(p.end(), b1.begin(), b1.end());
  p.insert(p.end(), w2.begin(), w2.end());
  p.push_back(b2);
  return p;
}

void RegressorModel::unflatten(const std::vector<double>& params) {
  if (params.size() != parameter_count()) {
    throw std::invalid_argument("unflatten: parameter count mismatch");
  }
  size_t off = 0;
  std::copy_n(params.begin() + off, w1.size(), w1.begin());
  off += w1.size();
  std::copy_n(params.begin() + off, b1.size(), b1.begin());
  off += b1.size();
  std::copy_n(params.begin() + off, w2.size(), w2.begin());
  off += w2.size();
  b2 = params[off];
}

std::vector<double> Gradients::flatten() const {
  std::vector<double> p;
  p.reserve(w1.size() + b1.size() + w2.size() + 1);
  p.insert(p.end(), w1.begin(), w1.end());
  p.insert(p.end(), b1.begin(), b1.end());
  p.insert(p.end(), w2.begin(), w2.end());
  p.push_back(b2);
  return p;
}

std::vector<double> forward(const RegressorModel& model, const FeatureMatrix& features) {
  if (features.cols != model.input_dim) {
    throw std::invalid_argument("forward: feature dimension mismatch");
  }
  std::vector<double> out(features.rows);
  for (size_t i = 0; i < features.rows; ++i) out[i] = forward_row(model, features, i).pred;
  return out;
}

double batch_loss(const RegressorModel& model, const std::vector<const TrainExample*>& batch) {
  if (batch.empty()) return 0.0;
  double total = 0.0;
  for (const auto* ex : batch) {
    double doc_loss = 0.0;
    for (size_t i = 0; i < ex->features.rows; ++i) {
      const double r = forward_row(model, ex->features, i).pred - ex->labels[i];
      doc_loss += r * r;
    }
    if (ex->features.rows > 0) doc_loss /= static_cast<double>(ex->features.rows);
    total += doc_loss;
  }
  return total / static_cast<double>(batch.size());
}

Gradients gradient(const RegressorModel& model, const std::vector<const TrainExample*>& batch) {
  Gradients g;
  g.w1.assign(model.w1.size(), 0.0);
  g.b1.assign(model.b1.size(), 0.0);
  g.w2.assign(model.w2.size(), 0.0);
  g.b2 = 0.0;
  if (batch.empty()) return g;
  const double batch_scale = 1.0 / static_cast<double>(batch.size());
  for (const auto* ex : batch) {
    if (ex->labels.size() != ex->features.rows) {
      throw std::invalid_argument("gradient: label length mismatch");
    }
    if (ex->features.cols != model.input_dim) {
      throw std::invalid_argument("gradient: feature dimension mismatch");
    }
    if (ex->features.rows == 0) continue;
    const double doc_scale = batch_scale / static_cast<double>(ex->features.rows);
    for (size_t i = 0; i < ex->features.rows; ++i) {
      const ForwardCache c = forward_row(model, ex->features, i);
      const double residual = c.pred - ex->labels[i];
      // d(loss)/d(z2) for squared error (1/N_d per-doc mean folded into scale)
      const double dz2 = 2.0 * residual * c.pred * (1.0 - c.pred) * doc_scale;
      g.b2 += dz2;
      for (size_t h = 0; h < model.hidden_dim; ++h) {
        g.w2[h] += dz2 * c.hidden[h];
        const double dz1 = dz2 * model.w2[h] * (1.0 - c.hidden[h] * c.hidden[h]);
        g.b1[h] += dz1;
        double* grow = &g.w1[h * model.input_dim];
        for (size_t k = 0; k < model.input_dim; ++k) grow[k] += dz1 * c.x[k];
      }
    }
  }
  return g;
}

TrainResult train(RegressorModel model, const std::vector<TrainExample>& train_set,
                  const std::vector<TrainExample>& validation_set, const TrainConfig& cfg,
                  const std::string& task_tag) {
  if (cfg.learning_rate < 0.0) throw std::invalid_argument("train: learning_rate must be >= 0");
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  for (const auto& ex : train_set) {
    if (ex.labels.size() != ex.features.rows) {
      throw std::invalid_argument("train: label length mismatch for " + ex.features.document_id);
    }
  }
  if (model.feat_mean.empty()) compute_standardization(model, train_set);
  model.task_sequence.push_back(task_tag);

  TrainResult result;
  Rng rng(cfg.seed);
  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), size_t{0});

  std::vector<double> velocity(model.parameter_count(), 0.0);
  std::vector<double> params = model.flatten();

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> best_params = params;
  int since_best = 0;
  const size_t batch_size = std::max<size_t>(1, cfg.batch_size);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < order.size(); start += batch_size) {
      std::vector<const TrainExample*> batch;
      for (size_t i = start; i < std::min(order.size(), start + batch_size); ++i) {
        batch.push_back(&train_set[order[i]]);
      }
      const double loss = batch_loss(model, batch);
      if (!std::isfinite(loss)) {
        throw std::runtime_error("train: non-finite loss in epoch " + std::to_string(epoch) +
                                 " batch " + std::to_string(batches) + " (first doc " +
                                 batch.front()->features.document_id + ")");
      }
      epoch_loss += loss;
      ++batches;
      const Gradients g = gradient(model, batch);
      const std::vector<double> flat_g = g.flatten();
      for (size_t p = 0; p < params.size(); ++p) {
        velocity[p] = cfg.momentum * velocity[p] - cfg.learning_rate * flat_g[p];
        params[p] += velocity[p];
      }
      model.unflatten(params);
    }
    EpochLoss el;
    el.train = batches > 0 ? epoch_loss / static_cast<double>(batches) : 0.0;
    if (!validation_set.empty()) {
      el.validation = dataset_loss(model, validation_set);
      if (*el.validation < best_val) {
        best_val = *el.validation;
        best_params = params;
        since_best = 0;
      } else {
        ++since_best;
      }
    }
    result.loss_curve.push_back(el);
    if (cfg.patience > 0 && !validation_set.empty() && since_best >= cfg.patience) break;
  }

  if (!validation_set.empty() && cfg.patience > 0) {
    model.unflatten(best_params);  // restore best-validation parameters
  }
  result.model = std::move(model);
  return result;
}

const char* tl_variant_name(TlVariant v) {
  switch (v) {
    case TlVariant::None: return "none";
    case TlVariant::S1: return "s1";
    case TlVariant::S2: return "s2";
    case TlVariant::SL: return "sl";
  }
  return "?";
}

std::optional<TlVariant> parse_tl_variant(const std::string& name) {
  if (name == "none") return TlVariant::None;
  if (name == "s1") return TlVariant::S1;
  if (name == "s2") return TlVariant::S2;
  if (name == "sl" || name == "s_l") return TlVariant::SL;
  return std::nullopt;
}

TrainResult stilts_train(const std::vector<TrainExample>& salience_train,
                         const std::vector<TrainExample>& salience_validation,
                         const std::vector<TrainExample>& popularity_train,
                         const std::vector<TrainExample>& popularity_validation,
                         TlVariant variant, const TrainConfig& cfg) {
  RegressorModel model = RegressorModel::random_init(kFeatureCount, 16, cfg.seed);
  const int pretrain_epochs = cfg.pretrain_epochs >= 0 ? cfg.pretrain_epochs : cfg.epochs;

  if (variant != TlVariant::None && pretrain_epochs > 0) {
    TrainConfig pre = cfg;
    pre.epochs = pretrain_epochs;
    TrainResult pretrained = train(std::move(model), salience_train, salience_validation, pre,
                                   std::string("salience_") + tl_variant_name(variant));
    TrainConfig fine = cfg;
    fine.learning_rate = cfg.finetune_learning_rate;
    TrainResult out = train(std::move(pretrained.model), popularity_train,
                            popularity_validation, fine, "popularity");
    out.loss_curve.insert(out.loss_curve.begin(), pretrained.loss_curve.begin(),
                          pretrained.loss_curve.end());
    return out;
  }
  return train(std::move(model), popularity_train, popularity_validation, cfg, "popularity");
}

// ---- model serialization ---------------------------------------------------

std::string model_to_json(const RegressorModel& model) {
  ordered_json j;
  j["schema_version"] = kModelSchemaVersion;
  j["input_dim"] = model.input_dim;
  j["hidden_dim"] = model.hidden_dim;
  auto names = ordered_json::array();
  for (const auto& n : feature_names()) names.push_back(n);
  j["feature_names"] = std::move(names);
  j["w1"] = model.w1;
  j["b1"] = model.b1;
  j["w2"] = model.w2;
  j["b2"] = model.b2;
  j["feat_mean"] = model.feat_mean;
  j["feat_std"] = model.feat_std;
  j["provenance"] = {{"task_sequence", model.task_sequence}, {"seed", model.seed}};
  return j.dump(2) + "\n";
}

RegressorModel model_from_json(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != kModelSchemaVersion) {
    throw std::runtime_error("model schema version mismatch (expected " +
                             std::to_string(kModelSchemaVersion) + ")");
  }
  RegressorModel m;
  m.input_dim = j["input_dim"].get<size_t>();
  m.hidden_dim = j["hidden_dim"].get<size_t>();
  m.w1 = j["w1"].get<std::vector<double>>();
  m.b1 = j["b1"].get<std::vector<double>>();
  m.w2 = j["w2"].get<std::vector<double>>();
  m.b2 = j["b2"].get<double>();
  m.feat_mean = j["feat_mean"].get<std::vector<double>>();
  m.feat_std = j["feat_std"].get<std::vector<double>>();
  if (j.contains("provenance")) {
    m.task_sequence = j["provenance"].value("task_sequence", std::vector<std::string>{});
    m.seed = j["provenance"].value("seed", uint64_t{0});
  }
  if (m.w1.size() != m.hidden_dim * m.input_dim || m.b1.size() != m.hidden_dim ||
      m.w2.size() != m.hidden_dim || m.feat_mean.size() != m.input_dim ||
      m.feat_std.size() != m.input_dim) {
    throw std::runtime_error("model file has inconsistent parameter shapes");
  }
  return m;
}

void save_model(const std::string& path, const RegressorModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << model_to_json(model);
}

RegressorModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

// ---- sliding window --------------------------------------------------------

std::vector<WindowSpan> window_spans(size_t n, const WindowConfig& cfg) {
  if (cfg.window < 1 || cfg.stride < 1 || cfg.stride > cfg.window) {
    throw std::invalid_argument("window_spans: need 1 <= stride <= window");
  }
  std::vector<WindowSpan> spans;
  if (n == 0) return spans;
  if (n <= cfg.window) {
    spans.push_back({0, n});
    return spans;
  }
  const size_t advance = std::max<size_t>(cfg.window - cfg.stride, 1);
  size_t start = 0;
  for (;;) {
    const size_t end = std::min(start + cfg.window, n);
    spans.push_back({start, end});
    if (end == n) break;
    start += advance;
  }
  return spans;
}

std::vector<double> windowed_score(const DocumentScorer& scorer, const Document& doc,
                                   const WindowConfig& cfg) {
  const size_t n = doc.size();
  if (n <= cfg.window) return scorer(doc);

  std::vector<double> sums(n, 0.0);
  std::vector<size_t> counts(n, 0);
  for (const auto& span : window_spans(n, cfg)) {
    Document window_doc;
    window_doc.id = doc.id;
    window_doc.source = doc.source;
    window_doc.sentences.assign(doc.sentences.begin() + span.begin,
                                doc.sentences.begin() + span.end);
    const std::vector<double> scores = scorer(window_doc);
    for (size_t i = span.begin; i < span.end; ++i) {
      sums[i] += scores[i - span.begin];
      ++counts[i];
    }
  }
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = sums[i] / static_cast<double>(counts[i]);
  return out;
}

}  // namespace popcast
