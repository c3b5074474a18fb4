#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popcast/labels.hpp"
#include "popcast/rankers.hpp"

namespace popcast {

// |A_k intersect P_k| / k over the index sets of the k highest true and
// predicted scores; ties broken toward the lower sentence index.
double top_k_overlap(const std::vector<double>& truth, const std::vector<double>& pred, size_t k);

double mse(const std::vector<double>& truth, const std::vector<double>& pred);
double mae(const std::vector<double>& truth, const std::vector<double>& pred);

// Kendall tau-b (tie-corrected). A constant input has no ranking information:
// returns 0 and sets *degenerate.
double kendall_tau(const std::vector<double>& truth, const std::vector<double>& pred,
                   bool* degenerate = nullptr);

// Spearman rho: Pearson correlation of average ranks (ties share the mean
// rank). Constant input -> 0 with *degenerate set.
double spearman_rho(const std::vector<double>& truth, const std::vector<double>& pred,
                    bool* degenerate = nullptr);

// DCG of the true labels under the predicted ordering (ties -> lower index
// first) with log2(r+1) discount and no cutoff, normalized by the ideal
// ordering. IDCG = 0 yields 1.0 with *degenerate set.
double ndcg(const std::vector<double>& truth, const std::vector<double>& pred,
            bool* degenerate = nullptr);

struct DocumentEval {
  std::string id;
  std::vector<double> top_k;  // fractions, aligned with EvalReport::k_list
  double mse = 0.0;
  double mae = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  double ndcg = 0.0;
  bool tau_degenerate = false;
  bool rho_degenerate = false;
};

// Macro-aggregated report: per-document metrics then unweighted means.
// top_k means are reported as percentages, matching the usual table layout.
struct EvalReport {
  std::string scorer;
  std::string task;
  std::string train_task;  // set only for cross-task evaluation
  std::vector<size_t> k_list{1, 2, 3};
  std::vector<DocumentEval> documents;
  std::vector<double> mean_top_k_pct;
  double mean_mse = 0.0;
  double mean_mae = 0.0;
  double mean_tau = 0.0;
  double mean_rho = 0.0;
  double mean_ndcg = 0.0;
  size_t document_count = 0;
  size_t degenerate_correlation_count = 0;
  std::string config_fingerprint;
};

EvalReport evaluate_corpus(const std::string& scorer, const std::string& task,
                           const std::vector<LabelVector>& labels,
                           const std::vector<ScoreVector>& scores,
                           const std::vector<size_t>& k_list = {1, 2, 3});

// Same evaluation, tagged with the task the scores were trained on.
EvalReport cross_task_eval(const std::string& scorer, const std::string& train_task,
                           const std::string& eval_task, const std::vector<LabelVector>& labels,
                           const std::vector<ScoreVector>& scores,
                           const std::vector<size_t>& k_list = {1, 2, 3});

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json_text);

// Aligned plain-text table, one row per report:
// Scorer TL Top1 Top2 Top3 MSE MAE tau rho nDCG
std::string reports_to_table(const std::vector<EvalReport>& reports);

// Two-sided sign-flip permutation test on the mean of paired differences
// (e.g. per-document nDCG of two scorers). Deterministic given seed.
double paired_permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                                 int iterations = 10000, uint64_t seed = 0);

}  // namespace popcast
