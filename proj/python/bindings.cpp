// Python surface over the core operations: text handling, labeling, rankers,
// metrics, the synthetic generator, and trained-model scoring.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "popcast/corpus.hpp"
#include "popcast/features.hpp"
#include "popcast/labels.hpp"
#include "popcast/metrics.hpp"
#include "popcast/pipeline.hpp"
#include "popcast/rankers.hpp"
#include "popcast/regressor.hpp"
#include "popcast/synth.hpp"
#include "popcast/text.hpp"

namespace py = pybind11;
using namespace popcast;

namespace {

Document doc_from_sentences(const std::vector<std::string>& sentences, const std::string& id) {
  Document d;
  d.id = id;
  d.source = "python";
  for (const auto& text : sentences) {
    Sentence s;
    s.text = text;
    s.tokens = tokenize(text);
    d.sentences.push_back(std::move(s));
  }
  return d;
}

RougeMode mode_from(const std::string& mode) {
  if (mode == "f1") return RougeMode::F1;
  if (mode == "recall") return RougeMode::Recall;
  throw std::invalid_argument("mode must be 'f1' or 'recall'");
}

LabelTask task_from(const std::string& name) {
  const auto task = parse_task(name);
  if (!task) throw std::invalid_argument("unknown task: " + name);
  return *task;
}

std::vector<double> rank_one(const std::vector<std::string>& sentences,
                             const std::string& scorer, double threshold, size_t window,
                             size_t stride, const RegressorModel* model) {
  RankOptions options;
  options.scorer = scorer;
  options.lexrank_threshold = threshold;
  options.window = window;
  options.stride = stride;
  options.model = model;
  const auto scores = rank_corpus({doc_from_sentences(sentences, "py")}, options);
  return scores.front().values;
}

}  // namespace

PYBIND11_MODULE(popcast, m) {
  m.doc() = "sentence popularity forecasting and salience ranking";

  // text
  m.def("split_sentences", &split_sentences, py::arg("text"));
  m.def("tokenize", &tokenize, py::arg("text"));

  // labeling
  m.def(
      "rouge_n",
      [](const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
         int n, const std::string& mode) { return rouge_n(candidate, reference, n, mode_from(mode)); },
      py::arg("candidate"), py::arg("reference"), py::arg("n") = 1, py::arg("mode") = "f1");
  m.def(
      "rouge_l",
      [](const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
         const std::string& mode) { return rouge_l(candidate, reference, mode_from(mode)); },
      py::arg("candidate"), py::arg("reference"), py::arg("mode") = "f1");
  m.def(
      "popularity_labels",
      [](const std::vector<std::string>& sentences,
         const std::vector<std::string>& queries) -> std::optional<std::vector<double>> {
        const Document d = doc_from_sentences(sentences, "py");
        QuerySet qs;
        qs.document_id = "py";
        for (const auto& q : queries) {
          auto toks = tokenize(q);
          if (!toks.empty()) qs.queries.push_back(std::move(toks));
        }
        const auto lv = popularity_labels(d, qs);
        if (!lv) return std::nullopt;
        return lv->values;
      },
      py::arg("sentences"), py::arg("queries"),
      "Normalized popularity labels, or None when the document is unlabelable");
  m.def(
      "salience_labels",
      [](const std::vector<std::string>& sentences, const std::vector<std::string>& summary,
         const std::string& variant, const std::string& mode) {
        const Document d = doc_from_sentences(sentences, "py");
        SummaryRef ref;
        ref.document_id = "py";
        for (const auto& s : summary) ref.summary_sentences.push_back(tokenize(s));
        return salience_labels(d, ref, task_from(variant), mode_from(mode)).values;
      },
      py::arg("sentences"), py::arg("summary"), py::arg("variant") = "sl",
      py::arg("mode") = "f1");

  // rankers
  m.def(
      "position_scores",
      [](size_t n, int base) { return position_scores(n, base).values; }, py::arg("n"),
      py::arg("base") = 1);
  m.def(
      "textrank_scores",
      [](const std::vector<std::string>& sentences) {
        return textrank_scores(doc_from_sentences(sentences, "py")).values;
      },
      py::arg("sentences"));
  m.def(
      "lexrank_scores",
      [](const std::vector<std::string>& sentences, double threshold) {
        LexRankConfig cfg;
        cfg.threshold = threshold;
        return lexrank_scores(doc_from_sentences(sentences, "py"), cfg).values;
      },
      py::arg("sentences"), py::arg("threshold") = 0.1);
  m.def(
      "pagerank",
      [](const std::vector<std::vector<double>>& weights, double damping, double tol,
         int max_iter) {
        const size_t n = weights.size();
        SimilarityGraph g(n);
        for (size_t i = 0; i < n; ++i) {
          if (weights[i].size() != n) throw std::invalid_argument("weights must be square");
          for (size_t j = 0; j < n; ++j) g.at(i, j) = weights[i][j];
        }
        return pagerank(g, {damping, tol, max_iter});
      },
      py::arg("weights"), py::arg("damping") = 0.85, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 10000);
  m.def(
      "rank_sentences",
      [](const std::vector<std::string>& sentences, const std::string& scorer, double threshold,
         size_t window, size_t stride) {
        return rank_one(sentences, scorer, threshold, window, stride, nullptr);
      },
      py::arg("sentences"), py::arg("scorer") = "lexrank", py::arg("threshold") = 0.1,
      py::arg("window") = 0, py::arg("stride") = 10,
      "Score sentences with an unsupervised ranker, optionally windowed");
  m.def("normalize_scores", &normalize_scores, py::arg("values"));

  // metrics
  m.def("top_k_overlap", &top_k_overlap, py::arg("truth"), py::arg("pred"), py::arg("k"));
  m.def("mse", &mse, py::arg("truth"), py::arg("pred"));
  m.def("mae", &mae, py::arg("truth"), py::arg("pred"));
  m.def(
      "kendall_tau",
      [](const std::vector<double>& truth, const std::vector<double>& pred) {
        return kendall_tau(truth, pred);
      },
      py::arg("truth"), py::arg("pred"));
  m.def(
      "spearman_rho",
      [](const std::vector<double>& truth, const std::vector<double>& pred) {
        return spearman_rho(truth, pred);
      },
      py::arg("truth"), py::arg("pred"));
  m.def(
      "ndcg",
      [](const std::vector<double>& truth, const std::vector<double>& pred) {
        return ndcg(truth, pred);
      },
      py::arg("truth"), py::arg("pred"));
  m.def("paired_permutation_pvalue", &paired_permutation_pvalue, py::arg("a"), py::arg("b"),
        py::arg("iterations") = 10000, py::arg("seed") = 0);

  // features and models
  m.def("feature_names", [] {
    const auto& names = feature_names();
    return std::vector<std::string>(names.begin(), names.end());
  });
  m.def(
      "extract_features",
      [](const std::vector<std::string>& sentences) {
        const FeatureMatrix f = extract_features(doc_from_sentences(sentences, "py"));
        std::vector<std::vector<double>> rows(f.rows, std::vector<double>(f.cols));
        for (size_t i = 0; i < f.rows; ++i) {
          for (size_t k = 0; k < f.cols; ++k) rows[i][k] = f.at(i, k);
        }
        return rows;
      },
      py::arg("sentences"));

  py::class_<RegressorModel>(m, "Model")
      .def_static("load", &load_model, py::arg("path"))
      .def("save", [](const RegressorModel& m_, const std::string& path) { save_model(path, m_); },
           py::arg("path"))
      .def_property_readonly("task_sequence",
                             [](const RegressorModel& m_) { return m_.task_sequence; })
      .def_property_readonly("hidden_dim", [](const RegressorModel& m_) { return m_.hidden_dim; })
      .def(
          "score",
          [](const RegressorModel& m_, const std::vector<std::string>& sentences, size_t window,
             size_t stride) {
            return rank_one(sentences, "model", 0.1, window, stride, &m_);
          },
          py::arg("sentences"), py::arg("window") = 50, py::arg("stride") = 10);

  m.def(
      "train_from_corpus",
      [](const std::string& corpus_path, const std::string& tl, uint64_t seed, int epochs,
         int pretrain_epochs, double lr, double finetune_lr, size_t batch_size, int patience) {
        const Corpus corpus = read_corpus_file(corpus_path);
        const auto variant = parse_tl_variant(tl);
        if (!variant) throw std::invalid_argument("unknown TL variant: " + tl);
        TrainConfig cfg;
        cfg.seed = seed;
        cfg.epochs = epochs;
        cfg.pretrain_epochs = pretrain_epochs;
        cfg.learning_rate = lr;
        cfg.finetune_learning_rate = finetune_lr;
        cfg.batch_size = batch_size;
        cfg.patience = patience;
        std::vector<TrainExample> pop_train, pop_val, pop_test, sal_train, sal_val, sal_test;
        split_examples(corpus, LabelTask::Popularity, pop_train, pop_val, pop_test);
        if (pop_train.empty()) throw std::runtime_error("no popularity labels in train split");
        if (*variant != TlVariant::None) {
          const LabelTask sal_task = *variant == TlVariant::S1   ? LabelTask::S1
                                     : *variant == TlVariant::S2 ? LabelTask::S2
                                                                 : LabelTask::SL;
          split_examples(corpus, sal_task, sal_train, sal_val, sal_test);
          if (sal_train.empty()) throw std::runtime_error("no salience labels for TL");
        }
        return stilts_train(sal_train, sal_val, pop_train, pop_val, *variant, cfg).model;
      },
      py::arg("corpus_path"), py::arg("tl") = "none", py::arg("seed") = 0, py::arg("epochs") = 60,
      py::arg("pretrain_epochs") = -1, py::arg("lr") = 1e-2, py::arg("finetune_lr") = 1e-3,
      py::arg("batch_size") = 32, py::arg("patience") = 10,
      "Train the popularity regressor from a labeled canonical corpus, with "
      "optional salience pretraining (STILTs)");

  // synthetic corpus
  m.def(
      "generate_synthetic_corpus",
      [](uint64_t seed, size_t n_docs, double task_correlation) {
        const auto synth = generate_synthetic_corpus({seed, n_docs, task_correlation});
        py::list out;
        for (const auto& sd : synth) {
          py::dict item;
          item["id"] = sd.doc.id;
          py::list sentences;
          for (const auto& s : sd.doc.sentences) sentences.append(s.text);
          item["sentences"] = std::move(sentences);
          py::list queries;
          for (const auto& q : sd.queries.queries) {
            std::string joined;
            for (size_t i = 0; i < q.size(); ++i) {
              if (i) joined += ' ';
              joined += q[i];
            }
            queries.append(joined);
          }
          item["queries"] = std::move(queries);
          item["popularity"] = sd.popularity;
          item["salience"] = sd.salience;
          out.append(std::move(item));
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("n_docs") = 100, py::arg("task_correlation") = 0.7);
}
