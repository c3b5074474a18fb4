// popcast: corpus-to-report pipeline for sentence popularity and salience
// ranking. Subcommands: ingest, label, rank, train, eval, cross-eval, synth.
// Exit codes: 0 success, 1 data error, 2 config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "popcast/corpus.hpp"
#include "popcast/labels.hpp"
#include "popcast/metrics.hpp"
#include "popcast/pipeline.hpp"
#include "popcast/rankers.hpp"
#include "popcast/regressor.hpp"
#include "popcast/rng.hpp"
#include "popcast/synth.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace popcast;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

uint64_t env_seed_default() {
  if (const char* env = std::getenv("POPCAST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("POPCAST_SEED is not an integer: " + std::string(env));
    }
  }
  return 0;
}

std::string fingerprint_hex(const ordered_json& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

// One manifest per run: the full effective config plus its fingerprint.
std::string write_manifest(const std::string& command, const std::string& primary_output,
                           const ordered_json& config) {
  ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["command"] = command;
  manifest["config"] = config;
  const std::string fp = fingerprint_hex(config);
  manifest["config_fingerprint"] = fp;
  std::ofstream out(primary_output + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest for " + primary_output);
  out << manifest.dump(2) << "\n";
  return fp;
}

void write_raw_docs(const std::string& path, const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& d : docs) {
    ordered_json j;
    j["id"] = d.id;
    j["source"] = d.source;
    auto arr = ordered_json::array();
    for (const auto& s : d.sentences) arr.push_back(s.text);
    j["sentences"] = std::move(arr);
    out << j.dump() << "\n";
  }
}

LabelTask require_task(const std::string& name) {
  const auto task = parse_task(name);
  if (!task) throw ConfigError("unknown task: " + name);
  return *task;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  uint64_t seed = 0;
  size_t docs = 1000;
  double rho = 0.7;
  double dup_prob = 0.1;
  std::string out_docs, out_queries, out_summaries, out_latent;
};

int run_synth(const SynthArgs& a) {
  SynthConfig cfg;
  cfg.seed = a.seed;
  cfg.n_docs = a.docs;
  cfg.task_correlation = a.rho;
  cfg.duplicate_probability = a.dup_prob;
  const auto synth = generate_synthetic_corpus(cfg);
  const SyntheticFiles files = render_synthetic(synth);

  ordered_json config = {{"seed", a.seed},     {"docs", a.docs},
                         {"rho", a.rho},       {"duplicate_probability", a.dup_prob},
                         {"out_docs", a.out_docs}, {"out_queries", a.out_queries},
                         {"out_summaries", a.out_summaries}, {"out_latent", a.out_latent}};
  write_manifest("synth", a.out_docs, config);

  write_raw_docs(a.out_docs, files.raw.documents);
  write_query_file(a.out_queries, files.queries);
  write_summary_file(a.out_summaries, files.summaries);
  if (!a.out_latent.empty()) write_corpus_file(a.out_latent, files.latent);

  std::cout << "synth: " << files.raw.documents.size() << " documents -> " << a.out_docs << "\n";
  return 0;
}

// ---- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::string docs, out, queries, out_queries, summaries, out_summaries;
  std::string grammar_file, report;
  bool expect_full_infopop = false;
  size_t jobs = 0;
};

int run_ingest(const IngestArgs& a) {
  if (!a.queries.empty() && a.out_queries.empty()) {
    throw ConfigError("--queries needs --out-queries");
  }
  if (!a.summaries.empty() && a.out_summaries.empty()) {
    throw ConfigError("--summaries needs --out-summaries");
  }

  ordered_json config = {{"docs", a.docs},
                         {"out", a.out},
                         {"queries", a.queries},
                         {"out_queries", a.out_queries},
                         {"summaries", a.summaries},
                         {"out_summaries", a.out_summaries},
                         {"grammar_file", a.grammar_file},
                         {"expect_full_infopop", a.expect_full_infopop}};
  const std::string fp = write_manifest("ingest", a.out, config);

  const std::vector<Document> raw = read_raw_documents(a.docs);
  std::unordered_map<std::string, std::vector<bool>> grammar;
  if (!a.grammar_file.empty()) grammar = read_grammar_file(a.grammar_file);

  Corpus kept;
  size_t too_short = 0, too_long = 0, no_grammatical = 0, dropped_sentences = 0;
  for (const Document& doc : raw) {
    if (doc.size() > kMaxSentences) {
      ++too_long;
      continue;
    }
    Document cleaned;
    cleaned.id = doc.id;
    cleaned.source = doc.source;
    size_t dropped = 0;
    auto it = grammar.find(doc.id);
    if (it != grammar.end()) {
      // external per-sentence verdicts replace the default predicate
      if (it->second.size() != doc.size()) {
        throw std::runtime_error("grammar file length mismatch for " + doc.id);
      }
      for (size_t i = 0; i < doc.size(); ++i) {
        if (it->second[i]) {
          cleaned.sentences.push_back(doc.sentences[i]);
        } else {
          ++dropped;
        }
      }
    } else {
      cleaned = clean_document(doc, default_grammatical, &dropped);
    }
    dropped_sentences += dropped;
    if (cleaned.size() == 0) {
      ++no_grammatical;
      continue;
    }
    const FilterDecision decision = filter_document(cleaned);
    if (!decision.accepted) {
      if (*decision.reason == RejectReason::TooShort) ++too_short;
      else if (*decision.reason == RejectReason::TooLong) ++too_long;
      else ++no_grammatical;
      continue;
    }
    kept.documents.push_back(std::move(cleaned));
    kept.labels.emplace_back();
  }

  write_corpus_file(a.out, kept);

  std::unordered_set<std::string> ids;
  for (const auto& d : kept.documents) ids.insert(d.id);
  size_t dropped_queries = 0, dropped_summaries = 0;
  if (!a.queries.empty()) {
    auto queries = read_query_file(a.queries);
    std::vector<QuerySet> filtered;
    for (auto& qs : queries) {
      if (ids.count(qs.document_id)) filtered.push_back(std::move(qs));
      else ++dropped_queries;
    }
    write_query_file(a.out_queries, filtered);
  }
  if (!a.summaries.empty()) {
    auto summaries = read_summary_file(a.summaries);
    std::vector<SummaryRef> filtered;
    for (auto& ref : summaries) {
      if (ids.count(ref.document_id)) filtered.push_back(std::move(ref));
      else ++dropped_summaries;
    }
    write_summary_file(a.out_summaries, filtered);
  }

  const CorpusStats stats = corpus_stats(kept.documents);
  ordered_json report;
  report["schema_version"] = 1;
  report["config_fingerprint"] = fp;
  report["input_documents"] = raw.size();
  report["accepted"] = kept.documents.size();
  report["rejected"] = {{"TooShort", too_short},
                        {"TooLong", too_long},
                        {"NoGrammaticalSentences", no_grammatical}};
  report["dropped_sentences"] = dropped_sentences;
  report["dropped_queries"] = dropped_queries;
  report["dropped_summaries"] = dropped_summaries;
  report["stats"] = {{"documents", stats.document_count},
                     {"sentences", stats.sentence_count},
                     {"min_sentences", stats.min_sentences},
                     {"max_sentences", stats.max_sentences},
                     {"mean_sentences", stats.mean_sentences},
                     {"mean_tokens_per_sentence", stats.mean_tokens_per_sentence}};
  if (!a.report.empty()) {
    std::ofstream out(a.report, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + a.report);
    out << report.dump(2) << "\n";
  }
  std::cout << report.dump(2) << "\n";
  if (raw.empty()) std::cerr << "warning: empty input corpus\n";

  if (a.expect_full_infopop) {
    std::string detail;
    if (!matches_infopop_scale(stats, &detail)) {
      std::cerr << "ingested data does not match the released-dataset scale: " << detail << "\n";
      return 1;
    }
  }
  return 0;
}

// ---- label -----------------------------------------------------------------

struct LabelArgs {
  std::string corpus, out, queries, summaries, sidecar;
  std::string task = "popularity";
  std::string rouge_mode = "f1";
  std::string idf_scope = "document";
  size_t jobs = 0;
};

int run_label(const LabelArgs& a) {
  const LabelTask task = require_task(a.task);
  if (task == LabelTask::Popularity && a.queries.empty()) {
    throw ConfigError("--task popularity needs --queries");
  }
  if (task != LabelTask::Popularity && a.summaries.empty()) {
    throw ConfigError("--task " + a.task + " needs --summaries");
  }
  if (a.rouge_mode != "f1" && a.rouge_mode != "recall") {
    throw ConfigError("--rouge-mode must be f1 or recall");
  }
  if (a.idf_scope != "document" && a.idf_scope != "corpus") {
    throw ConfigError("--idf-scope must be document or corpus");
  }

  ordered_json config = {{"corpus", a.corpus},   {"out", a.out},
                         {"task", a.task},       {"queries", a.queries},
                         {"summaries", a.summaries}, {"rouge_mode", a.rouge_mode},
                         {"idf_scope", a.idf_scope}};
  write_manifest("label", a.out, config);

  Corpus corpus = read_corpus_file(a.corpus);
  std::vector<QuerySet> queries;
  std::vector<SummaryRef> summaries;
  if (!a.queries.empty()) queries = read_query_file(a.queries);
  if (!a.summaries.empty()) summaries = read_summary_file(a.summaries);

  LabelOptions options;
  options.rouge_mode = a.rouge_mode == "f1" ? RougeMode::F1 : RougeMode::Recall;
  options.corpus_idf = a.idf_scope == "corpus";
  options.jobs = a.jobs;
  const LabelRunResult result = label_corpus(corpus, task, queries, summaries, options);

  write_corpus_file(a.out, corpus);

  ordered_json sidecar;
  sidecar["task"] = a.task;
  sidecar["labeled"] = result.labeled;
  sidecar["unlabelable"] = result.unlabelable;
  sidecar["uniform_fallback"] = result.uniform_fallback;
  const std::string sidecar_path = a.sidecar.empty() ? a.out + ".sidecar.json" : a.sidecar;
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) throw std::runtime_error("cannot write " + sidecar_path);
  side << sidecar.dump(2) << "\n";

  std::cout << "label: " << result.labeled << "/" << corpus.documents.size()
            << " documents labeled for " << a.task << " (" << result.unlabelable.size()
            << " unlabelable)\n";
  return 0;
}

// ---- rank ------------------------------------------------------------------

struct RankArgs {
  std::string corpus, out, scorer = "position", model_path;
  double threshold = 0.1;
  double damping = 0.85;
  double tol = 1e-8;
  int max_iter = 10000;
  int position_base = 1;
  long window = -1;  // -1: default per scorer (0 for unsupervised, 50 for model)
  size_t stride = 10;
  size_t jobs = 0;
};

RankOptions make_rank_options(const RankArgs& a, const RegressorModel* model) {
  RankOptions options;
  options.scorer = a.scorer;
  options.position_base = a.position_base;
  options.lexrank_threshold = a.threshold;
  options.damping = a.damping;
  options.tol = a.tol;
  options.max_iter = a.max_iter;
  options.window = a.window >= 0 ? static_cast<size_t>(a.window)
                                 : (a.scorer == "model" ? 50 : 0);
  options.stride = a.stride;
  options.model = model;
  options.jobs = a.jobs;
  return options;
}

int run_rank(const RankArgs& a) {
  static const std::unordered_set<std::string> kScorers = {"position", "textrank", "lexrank",
                                                           "model"};
  if (!kScorers.count(a.scorer)) throw ConfigError("unknown scorer: " + a.scorer);
  if (a.scorer == "model" && a.model_path.empty()) {
    throw ConfigError("--scorer model needs --model");
  }
  if (a.scorer != "model" && !a.model_path.empty()) {
    throw ConfigError("--model is only valid with --scorer model");
  }
  if (a.position_base != 0 && a.position_base != 1) {
    throw ConfigError("--position-base must be 0 or 1");
  }

  ordered_json config = {{"corpus", a.corpus},     {"out", a.out},
                         {"scorer", a.scorer},     {"model", a.model_path},
                         {"threshold", a.threshold}, {"damping", a.damping},
                         {"tol", a.tol},           {"max_iter", a.max_iter},
                         {"position_base", a.position_base}, {"window", a.window},
                         {"stride", a.stride}};
  write_manifest("rank", a.out, config);

  const Corpus corpus = read_corpus_file(a.corpus);
  std::optional<RegressorModel> model;
  if (!a.model_path.empty()) model = load_model(a.model_path);

  const auto scores =
      rank_corpus(corpus.documents, make_rank_options(a, model ? &*model : nullptr));
  write_score_file(a.out, scores);
  std::cout << "rank: scored " << scores.size() << " documents with " << a.scorer << "\n";
  return 0;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string corpus, out, salience_corpus, loss_curve;
  std::string task = "popularity";
  std::string tl = "none";
  uint64_t seed = 0;
  int epochs = 60;
  int pretrain_epochs = -1;
  double lr = 1e-2;
  double finetune_lr = 1e-3;
  double momentum = 0.9;
  size_t batch_size = 32;
  int patience = 10;
  size_t jobs = 0;
};

int run_train(const TrainArgs& a) {
  const LabelTask task = require_task(a.task);
  const auto tl = parse_tl_variant(a.tl);
  if (!tl) throw ConfigError("unknown TL variant: " + a.tl);
  if (task != LabelTask::Popularity && *tl != TlVariant::None) {
    throw ConfigError("--tl applies only to --task popularity");
  }

  ordered_json config = {{"corpus", a.corpus},       {"out", a.out},
                         {"task", a.task},           {"tl", a.tl},
                         {"salience_corpus", a.salience_corpus},
                         {"seed", a.seed},           {"epochs", a.epochs},
                         {"pretrain_epochs", a.pretrain_epochs}, {"lr", a.lr},
                         {"finetune_lr", a.finetune_lr}, {"momentum", a.momentum},
                         {"batch_size", a.batch_size}, {"patience", a.patience}};
  write_manifest("train", a.out, config);

  const Corpus corpus = read_corpus_file(a.corpus);

  TrainConfig cfg;
  cfg.learning_rate = a.lr;
  cfg.momentum = a.momentum;
  cfg.epochs = a.epochs;
  cfg.pretrain_epochs = a.pretrain_epochs;
  cfg.batch_size = a.batch_size;
  cfg.seed = a.seed;
  cfg.patience = a.patience;
  cfg.finetune_learning_rate = a.finetune_lr;

  TrainResult result;
  if (task == LabelTask::Popularity) {
    std::vector<TrainExample> pop_train, pop_val, pop_test;
    split_examples(corpus, LabelTask::Popularity, pop_train, pop_val, pop_test, a.jobs);
    if (pop_train.empty()) {
      throw std::runtime_error("no popularity-labeled documents in the train split of " +
                               a.corpus);
    }
    std::vector<TrainExample> sal_train, sal_val, sal_test;
    if (*tl != TlVariant::None) {
      const LabelTask sal_task = *tl == TlVariant::S1   ? LabelTask::S1
                                 : *tl == TlVariant::S2 ? LabelTask::S2
                                                        : LabelTask::SL;
      if (!a.salience_corpus.empty()) {
        const Corpus sal_corpus = read_corpus_file(a.salience_corpus);
        split_examples(sal_corpus, sal_task, sal_train, sal_val, sal_test, a.jobs);
      } else {
        split_examples(corpus, sal_task, sal_train, sal_val, sal_test, a.jobs);
      }
      if (sal_train.empty()) {
        throw std::runtime_error("no salience labels available for TL variant " + a.tl);
      }
    }
    result = stilts_train(sal_train, sal_val, pop_train, pop_val, *tl, cfg);
  } else {
    std::vector<TrainExample> tr, va, te;
    split_examples(corpus, task, tr, va, te, a.jobs);
    if (tr.empty()) {
      throw std::runtime_error("no " + a.task + "-labeled documents in the train split");
    }
    result = train(RegressorModel::random_init(kFeatureCount, 16, a.seed), tr, va, cfg,
                   std::string("salience_") + a.task);
  }

  save_model(a.out, result.model);
  if (!a.loss_curve.empty()) {
    ordered_json curve = ordered_json::array();
    for (const auto& e : result.loss_curve) {
      ordered_json ej;
      ej["train"] = e.train;
      ej["validation"] = e.validation ? ordered_json(*e.validation) : ordered_json(nullptr);
      curve.push_back(std::move(ej));
    }
    std::ofstream out(a.loss_curve, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + a.loss_curve);
    out << curve.dump(2) << "\n";
  }
  std::cout << "train: " << result.loss_curve.size() << " epochs -> " << a.out << "\n";
  return 0;
}

// ---- eval / cross-eval -------------------------------------------------------

struct EvalArgs {
  std::string scores, corpus, out;
  std::string task = "popularity";
  std::string scorer_name;  // override for the report row
};

int run_eval(const EvalArgs& a) {
  require_task(a.task);

  ordered_json config = {{"scores", a.scores}, {"corpus", a.corpus},
                         {"task", a.task},     {"out", a.out}};
  const std::string fp = write_manifest("eval", a.out, config);

  const Corpus corpus = read_corpus_file(a.corpus);
  const auto scores = read_score_file(a.scores);
  std::vector<std::string> skipped;
  const auto labels = collect_labels(corpus, require_task(a.task), &skipped);
  if (labels.empty()) throw std::runtime_error("no " + a.task + " labels in " + a.corpus);

  const std::string scorer =
      !a.scorer_name.empty() ? a.scorer_name : (scores.empty() ? "?" : scores.front().scorer);
  EvalReport report = evaluate_corpus(scorer, a.task, labels, scores);
  report.config_fingerprint = fp;

  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + a.out);
  out << report_to_json(report);
  std::cout << reports_to_table({report});
  if (!skipped.empty()) {
    std::cerr << "note: " << skipped.size() << " documents had no " << a.task << " labels\n";
  }
  return 0;
}

struct CrossEvalArgs {
  std::string model_path, scorer, corpus, out;
  std::string task = "popularity";
  long window = -1;
  size_t stride = 10;
  size_t jobs = 0;
};

int run_cross_eval(const CrossEvalArgs& a) {
  if (a.model_path.empty() == a.scorer.empty()) {
    throw ConfigError("need exactly one of --model or --scorer");
  }
  const LabelTask task = require_task(a.task);

  ordered_json config = {{"model", a.model_path}, {"scorer", a.scorer},
                         {"corpus", a.corpus},    {"task", a.task},
                         {"out", a.out},          {"window", a.window},
                         {"stride", a.stride}};
  const std::string fp = write_manifest("cross-eval", a.out, config);

  const Corpus corpus = read_corpus_file(a.corpus);
  const auto labels = collect_labels(corpus, task);
  if (labels.empty()) throw std::runtime_error("no " + a.task + " labels in " + a.corpus);

  std::string scorer_name, train_task;
  std::vector<ScoreVector> scores;
  RankArgs rank_args;
  rank_args.window = a.window;
  rank_args.stride = a.stride;
  rank_args.jobs = a.jobs;
  if (!a.model_path.empty()) {
    const RegressorModel model = load_model(a.model_path);
    train_task = model.task_sequence.empty() ? "?" : model.task_sequence.back();
    scorer_name = "model";
    rank_args.scorer = "model";
    scores = rank_corpus(corpus.documents, make_rank_options(rank_args, &model));
  } else {
    scorer_name = a.scorer;
    train_task = a.scorer;
    rank_args.scorer = a.scorer;
    scores = rank_corpus(corpus.documents, make_rank_options(rank_args, nullptr));
  }

  EvalReport report = cross_task_eval(scorer_name, train_task, a.task, labels, scores);
  report.config_fingerprint = fp;
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + a.out);
  out << report_to_json(report);
  std::cout << reports_to_table({report});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sentence popularity forecasting and salience ranking pipeline"};
  app.set_config("--config", "", "TOML-style config file; flags override file values");
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
  auto* synth_seed = synth->add_option("--seed", synth_args.seed,
                                       "rng seed (env POPCAST_SEED as fallback)");
  synth->add_option("--docs", synth_args.docs, "number of documents");
  synth->add_option("--rho", synth_args.rho, "popularity/salience correlation in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--dup-prob", synth_args.dup_prob, "per-document duplicate-sentence chance");
  synth->add_option("--out-docs", synth_args.out_docs)->required();
  synth->add_option("--out-queries", synth_args.out_queries)->required();
  synth->add_option("--out-summaries", synth_args.out_summaries)->required();
  synth->add_option("--out-latent", synth_args.out_latent,
                    "also write the latent labels as a canonical corpus");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "filter raw documents into a canonical corpus");
  ingest->add_option("--docs", ingest_args.docs, "raw documents JSONL")->required();
  ingest->add_option("--out", ingest_args.out, "canonical corpus JSONL")->required();
  ingest->add_option("--queries", ingest_args.queries);
  ingest->add_option("--out-queries", ingest_args.out_queries);
  ingest->add_option("--summaries", ingest_args.summaries);
  ingest->add_option("--out-summaries", ingest_args.out_summaries);
  ingest->add_option("--grammar-file", ingest_args.grammar_file,
                     "per-sentence grammaticality verdicts JSONL");
  ingest->add_option("--report", ingest_args.report, "ingestion report JSON");
  ingest->add_flag("--expect-full-infopop", ingest_args.expect_full_infopop,
                   "fail unless stats match the released dataset scale");
  ingest->add_option("--jobs", ingest_args.jobs);

  LabelArgs label_args;
  auto* label = app.add_subcommand("label", "attach task labels to a canonical corpus");
  label->add_option("--corpus", label_args.corpus)->required();
  label->add_option("--out", label_args.out)->required();
  label->add_option("--task", label_args.task, "popularity | s1 | s2 | sl");
  label->add_option("--queries", label_args.queries);
  label->add_option("--summaries", label_args.summaries);
  label->add_option("--sidecar", label_args.sidecar, "unlabelable-document sidecar JSON");
  label->add_option("--rouge-mode", label_args.rouge_mode, "f1 | recall");
  label->add_option("--idf-scope", label_args.idf_scope, "document | corpus");
  label->add_option("--jobs", label_args.jobs);

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "score sentences with a ranker");
  rank->add_option("--corpus", rank_args.corpus)->required();
  rank->add_option("--out", rank_args.out)->required();
  rank->add_option("--scorer", rank_args.scorer, "position | textrank | lexrank | model");
  rank->add_option("--model", rank_args.model_path, "model JSON for --scorer model");
  rank->add_option("--threshold", rank_args.threshold,
                   "lexrank cosine threshold, 0 = continuous");
  rank->add_option("--damping", rank_args.damping);
  rank->add_option("--tol", rank_args.tol);
  rank->add_option("--max-iter", rank_args.max_iter);
  rank->add_option("--position-base", rank_args.position_base, "0 | 1");
  rank->add_option("--window", rank_args.window, "max sentences per window, 0 = whole document");
  rank->add_option("--stride", rank_args.stride, "window overlap in sentences");
  rank->add_option("--jobs", rank_args.jobs);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train the sequence regressor");
  train_cmd->add_option("--corpus", train_args.corpus, "labeled canonical corpus")->required();
  train_cmd->add_option("--out", train_args.out, "model JSON output")->required();
  train_cmd->add_option("--task", train_args.task, "popularity | s1 | s2 | sl");
  train_cmd->add_option("--tl", train_args.tl, "STILTs variant: none | s1 | s2 | sl");
  train_cmd->add_option("--salience-corpus", train_args.salience_corpus,
                        "separate corpus for the TL pretraining stage");
  auto* train_seed = train_cmd->add_option("--seed", train_args.seed,
                                           "rng seed (env POPCAST_SEED as fallback)");
  train_cmd->add_option("--epochs", train_args.epochs);
  train_cmd->add_option("--pretrain-epochs", train_args.pretrain_epochs);
  train_cmd->add_option("--lr", train_args.lr);
  train_cmd->add_option("--finetune-lr", train_args.finetune_lr);
  train_cmd->add_option("--momentum", train_args.momentum);
  train_cmd->add_option("--batch-size", train_args.batch_size);
  train_cmd->add_option("--patience", train_args.patience);
  train_cmd->add_option("--loss-curve", train_args.loss_curve, "loss curve JSON output");
  train_cmd->add_option("--jobs", train_args.jobs);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate score files against labels");
  eval_cmd->add_option("--scores", eval_args.scores)->required();
  eval_cmd->add_option("--corpus", eval_args.corpus)->required();
  eval_cmd->add_option("--out", eval_args.out)->required();
  eval_cmd->add_option("--task", eval_args.task);
  eval_cmd->add_option("--scorer-name", eval_args.scorer_name);

  CrossEvalArgs cross_args;
  auto* cross = app.add_subcommand("cross-eval", "evaluate a model across tasks");
  cross->add_option("--model", cross_args.model_path);
  cross->add_option("--scorer", cross_args.scorer);
  cross->add_option("--corpus", cross_args.corpus)->required();
  cross->add_option("--out", cross_args.out)->required();
  cross->add_option("--task", cross_args.task, "evaluation task");
  cross->add_option("--window", cross_args.window);
  cross->add_option("--stride", cross_args.stride);
  cross->add_option("--jobs", cross_args.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (!*synth_seed) synth_args.seed = env_seed_default();
    if (!*train_seed) train_args.seed = env_seed_default();
    if (synth->parsed()) return run_synth(synth_args);
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (label->parsed()) return run_label(label_args);
    if (rank->parsed()) return run_rank(rank_args);
    if (train_cmd->parsed()) return run_train(train_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (cross->parsed()) return run_cross_eval(cross_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
