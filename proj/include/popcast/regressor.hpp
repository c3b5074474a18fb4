#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "popcast/corpus.hpp"
#include "popcast/features.hpp"

namespace popcast {

// One hidden tanh layer, sigmoid output head; all parameters finite, forward
// output always in (0, 1). Standardization parameters travel with the model.
struct RegressorModel {
  size_t input_dim = kFeatureCount;
  size_t hidden_dim = 16;
  std::vector<double> w1;      // hidden_dim x input_dim, row-major
  std::vector<double> b1;      // hidden_dim
  std::vector<double> w2;      // hidden_dim
  double b2 = 0.0;
  std::vector<double> feat_mean;  // input_dim
  std::vector<double> feat_std;   // input_dim, entries > 0

  // training provenance
  std::vector<std::string> task_sequence;
  uint64_t seed = 0;

  static RegressorModel random_init(size_t input_dim, size_t hidden_dim, uint64_t seed);

  size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }
  std::vector<double> flatten() const;
  void unflatten(const std::vector<double>& params);
};

// versioned JSON; loading refuses a schema-version mismatch
std::string model_to_json(const RegressorModel& model);
RegressorModel model_from_json(const std::string& json_text);
void save_model(const std::string& path, const RegressorModel& model);
RegressorModel load_model(const std::string& path);

// sigmoid(w2 . tanh(W1 x + b1) + b2) per row; features are standardized with
// the model's stored parameters before the affine layers.
std::vector<double> forward(const RegressorModel& model, const FeatureMatrix& features);

struct TrainExample {
  FeatureMatrix features;
  std::vector<double> labels;  // length features.rows
};

struct Gradients {
  std::vector<double> w1, b1, w2;
  double b2 = 0.0;
  std::vector<double> flatten() const;
};

// Exact analytic gradients of the batch objective:
// mean over documents of mean-squared error over their sentences.
Gradients gradient(const RegressorModel& model, const std::vector<const TrainExample*>& batch);

double batch_loss(const RegressorModel& model, const std::vector<const TrainExample*>& batch);

struct TrainConfig {
  double learning_rate = 1e-2;
  double momentum = 0.9;
  int epochs = 60;
  int pretrain_epochs = -1;  // -1: same as epochs
  size_t batch_size = 32;    // documents
  uint64_t seed = 0;
  int patience = 10;         // early stop on validation loss; <= 0 disables
  double finetune_learning_rate = 1e-3;
};

struct EpochLoss {
  double train = 0.0;
  std::optional<double> validation;
};

struct TrainResult {
  RegressorModel model;
  std::vector<EpochLoss> loss_curve;
};

// Mini-batch gradient descent with momentum; deterministic given seed.
// Standardization stats are (re)computed from the training examples only
// when the model has none yet, so a fine-tune keeps the pretrain scaling.
TrainResult train(RegressorModel model, const std::vector<TrainExample>& train_set,
                  const std::vector<TrainExample>& validation_set, const TrainConfig& cfg,
                  const std::string& task_tag);

enum class TlVariant { None, S1, S2, SL };
const char* tl_variant_name(TlVariant v);
std::optional<TlVariant> parse_tl_variant(const std::string& name);

// Supplementary training on the salience task, then fine-tuning every
// parameter on popularity at cfg.finetune_learning_rate. variant None (or
// zero pretrain epochs) trains on popularity alone from random init.
TrainResult stilts_train(const std::vector<TrainExample>& salience_train,
                         const std::vector<TrainExample>& salience_validation,
                         const std::vector<TrainExample>& popularity_train,
                         const std::vector<TrainExample>& popularity_validation,
                         TlVariant variant, const TrainConfig& cfg);

struct WindowConfig {
  size_t window = 50;  // max sentences per window
  size_t stride = 10;  // overlap between consecutive windows
};

struct WindowSpan {
  size_t begin = 0;
  size_t end = 0;  // exclusive
};

// Consecutive windows advancing by (window - stride); a degenerate
// stride == window advances by one sentence. The final window ends at n.
std::vector<WindowSpan> window_spans(size_t n, const WindowConfig& cfg);

using DocumentScorer = std::function<std::vector<double>(const Document&)>;

// Scores each window independently as its own sub-document; a sentence
// covered by several windows gets the arithmetic mean of its window scores.
// Identical to scorer(doc) whenever n <= window.
std::vector<double> windowed_score(const DocumentScorer& scorer, const Document& doc,
                                   const WindowConfig& cfg);

}  // namespace popcast
