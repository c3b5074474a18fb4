#include "popcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "popcast/rng.hpp"

namespace popcast {

using ordered_json = nlohmann::ordered_json;

namespace {

void check_lengths(const std::vector<double>& truth, const std::vector<double>& pred,
                   const char* op) {
  if (truth.size() != pred.size()) {
    throw std::invalid_argument(std::string(op) + ": length mismatch (" +
                                std::to_string(truth.size()) + " vs " +
                                std::to_string(pred.size()) + ")");
  }
}

// indices ordered by value descending, lower index first on ties
std::vector<size_t> ranking(const std::vector<double>& values) {
  std::vector<size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return values[a] > values[b]; });
  return idx;
}

// average ranks (1-based), ties share the mean rank
std::vector<double> average_ranks(const std::vector<double>& values) {
  const size_t n = values.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

// discordant pairs via merge sort (Knight's algorithm)
uint64_t merge_count(std::vector<double>& values, std::vector<double>& scratch, size_t lo,
                     size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  uint64_t swaps = merge_count(values, scratch, lo, mid) + merge_count(values, scratch, mid, hi);
  size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (values[b] < values[a]) {
      swaps += mid - a;
      scratch[out++] = values[b++];
    } else {
      scratch[out++] = values[a++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return swaps;
}

uint64_t tie_pair_count(const std::vector<double>& sorted_keys) {
  uint64_t pairs = 0;
  size_t i = 0;
  while (i < sorted_keys.size()) {
    size_t j = i;
    while (j + 1 < sorted_keys.size() && sorted_keys[j + 1] == sorted_keys[i]) ++j;
    const uint64_t t = j - i + 1;
    pairs += t * (t - 1) / 2;
    i = j + 1;
  }
  return pairs;
}

}  // namespace

double top_k_overlap(const std::vector<double>& truth, const std::vector<double>& pred,
                     size_t k) {
  check_lengths(truth, pred, "top_k_overlap");
  if (k < 1 || k > truth.size()) {
    throw std::invalid_argument("top_k_overlap: k out of range");
  }
  const auto truth_order = ranking(truth);
  const auto pred_order = ranking(pred);
  std::vector<char> in_truth(truth.size(), 0);
  for (size_t r = 0; r < k; ++r) in_truth[truth_order[r]] = 1;
  size_t overlap = 0;
  for (size_t r = 0; r < k; ++r) overlap += in_truth[pred_order[r]];
  return static_cast<double>(overlap) / static_cast<double>(k);
}

double mse(const std::vector<double>& truth, const std::vector<double>& pred) {
  check_lengths(truth, pred, "mse");
  if (truth.empty()) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - pred[i];
    s += d * d;
  }
  return s / static_cast<double>(truth.size());
}

double mae(const std::vector<double>& truth, const std::vector<double>& pred) {
  check_lengths(truth, pred, "mae");
  if (truth.empty()) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) s += std::fabs(truth[i] - pred[i]);
  return s / static_cast<double>(truth.size());
}

double kendall_tau(const std::vector<double>& truth, const std::vector<double>& pred,
                   bool* degenerate) {
  check_lengths(truth, pred, "kendall_tau");
  const size_t n = truth.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 elements");
  if (degenerate) *degenerate = false;

  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (truth[a] != truth[b]) return truth[a] < truth[b];
    return pred[a] < pred[b];
  });

  std::vector<double> x_sorted(n), y_by_x(n);
  for (size_t i = 0; i < n; ++i) {
    x_sorted[i] = truth[idx[i]];
    y_by_x[i] = pred[idx[i]];
  }

  // joint ties while y is still grouped within equal x runs
  uint64_t n3 = 0;
  {
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && x_sorted[j + 1] == x_sorted[i] && y_by_x[j + 1] == y_by_x[i]) ++j;
      const uint64_t t = j - i + 1;
      n3 += t * (t - 1) / 2;
      i = j + 1;
    }
  }

  const uint64_t n0 = static_cast<uint64_t>(n) * (n - 1) / 2;
  const uint64_t n1 = tie_pair_count(x_sorted);
  std::vector<double> y_sorted = pred;
  std::sort(y_sorted.begin(), y_sorted.end());
  const uint64_t n2 = tie_pair_count(y_sorted);

  if (n0 == n1 || n0 == n2) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }

  std::vector<double> scratch(n);
  const uint64_t discordant = merge_count(y_by_x, scratch, 0, n);

  const double con_minus_dis = static_cast<double>(n0) - static_cast<double>(n1) -
                               static_cast<double>(n2) + static_cast<double>(n3) -
                               2.0 * static_cast<double>(discordant);
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
  return con_minus_dis / denom;
}

double spearman_rho(const std::vector<double>& truth, const std::vector<double>& pred,
                    bool* degenerate) {
  check_lengths(truth, pred, "spearman_rho");
  const size_t n = truth.size();
  if (n < 2) throw std::invalid_argument("spearman_rho: need at least 2 elements");
  if (degenerate) *degenerate = false;

  const std::vector<double> rx = average_ranks(truth);
  const std::vector<double> ry = average_ranks(pred);
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

double ndcg(const std::vector<double>& truth, const std::vector<double>& pred,
            bool* degenerate) {
  check_lengths(truth, pred, "ndcg");
  if (degenerate) *degenerate = false;
  for (double v : truth) {
    if (v < 0.0) throw std::invalid_argument("ndcg: negative truth value");
  }
  if (truth.empty()) return 1.0;

  const auto pred_order = ranking(pred);
  double dcg = 0.0;
  for (size_t r = 0; r < pred_order.size(); ++r) {
    dcg += truth[pred_order[r]] / std::log2(static_cast<double>(r) + 2.0);
  }
  const auto ideal_order = ranking(truth);
  double idcg = 0.0;
  for (size_t r = 0; r < ideal_order.size(); ++r) {
    idcg += truth[ideal_order[r]] / std::log2(static_cast<double>(r) + 2.0);
  }
  if (idcg == 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
  return dcg / idcg;
}

EvalReport evaluate_corpus(const std::string& scorer, const std::string& task,
                           const std::vector<LabelVector>& labels,
                           const std::vector<ScoreVector>& scores,
                           const std::vector<size_t>& k_list) {
  std::unordered_map<std::string, const ScoreVector*> by_id;
  for (const auto& s : scores) by_id.emplace(s.document_id, &s);

  std::string missing;
  for (const auto& l : labels) {
    if (!by_id.count(l.document_id)) missing += (missing.empty() ? "" : ", ") + l.document_id;
  }
  if (!missing.empty()) {
    throw std::runtime_error("evaluate_corpus: no scores for: " + missing);
  }

  EvalReport report;
  report.scorer = scorer;
  report.task = task;
  report.k_list = k_list;
  report.mean_top_k_pct.assign(k_list.size(), 0.0);

  for (const auto& label : labels) {
    const ScoreVector& score = *by_id.at(label.document_id);
    if (score.values.size() != label.values.size()) {
      throw std::runtime_error("evaluate_corpus: length mismatch for " + label.document_id);
    }
    DocumentEval de;
    de.id = label.document_id;
    for (size_t k : k_list) de.top_k.push_back(top_k_overlap(label.values, score.values, k));
    de.mse = mse(label.values, score.values);
    de.mae = mae(label.values, score.values);
    de.tau = kendall_tau(label.values, score.values, &de.tau_degenerate);
    de.rho = spearman_rho(label.values, score.values, &de.rho_degenerate);
    de.ndcg = popcast::ndcg(label.values, score.values);
    if (de.tau_degenerate || de.rho_degenerate) ++report.degenerate_correlation_count;
    report.documents.push_back(std::move(de));
  }

  report.document_count = report.documents.size();
  if (report.document_count > 0) {
    const double inv = 1.0 / static_cast<double>(report.document_count);
    for (const auto& de : report.documents) {
      for (size_t i = 0; i < k_list.size(); ++i) report.mean_top_k_pct[i] += de.top_k[i];
      report.mean_mse += de.mse;
      report.mean_mae += de.mae;
      report.mean_tau += de.tau;
      report.mean_rho += de.rho;
      report.mean_ndcg += de.ndcg;
    }
    for (auto& v : report.mean_top_k_pct) v = v * inv * 100.0;
    report.mean_mse *= inv;
    report.mean_mae *= inv;
    report.mean_tau *= inv;
    report.mean_rho *= inv;
    report.mean_ndcg *= inv;
  }
  return report;
}

EvalReport cross_task_eval(const std::string& scorer, const std::string& train_task,
                           const std::string& eval_task, const std::vector<LabelVector>& labels,
                           const std::vector<ScoreVector>& scores,
                           const std::vector<size_t>& k_list) {
  EvalReport report = evaluate_corpus(scorer, eval_task, labels, scores, k_list);
  report.train_task = train_task;
  return report;
}

std::string report_to_json(const EvalReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  j["scorer"] = report.scorer;
  j["task"] = report.task;
  if (!report.train_task.empty()) j["train_task"] = report.train_task;
  j["conventions"] = {{"aggregation", "macro"},
                      {"ndcg", "raw-label gain, log2(r+1) discount, no cutoff"},
                      {"tie_break", "lower sentence index"},
                      {"constant_vector_correlation", "0 with diagnostic"}};
  if (!report.config_fingerprint.empty()) j["config_fingerprint"] = report.config_fingerprint;
  j["document_count"] = report.document_count;
  j["degenerate_correlation_count"] = report.degenerate_correlation_count;
  j["k_list"] = report.k_list;
  ordered_json means;
  for (size_t i = 0; i < report.k_list.size(); ++i) {
    means["top_" + std::to_string(report.k_list[i]) + "_pct"] = report.mean_top_k_pct[i];
  }
  means["mse"] = report.mean_mse;
  means["mae"] = report.mean_mae;
  means["tau"] = report.mean_tau;
  means["rho"] = report.mean_rho;
  means["ndcg"] = report.mean_ndcg;
  j["means"] = std::move(means);
  auto docs = ordered_json::array();
  for (const auto& de : report.documents) {
    ordered_json dj;
    dj["id"] = de.id;
    dj["top_k"] = de.top_k;
    dj["mse"] = de.mse;
    dj["mae"] = de.mae;
    dj["tau"] = de.tau;
    dj["rho"] = de.rho;
    dj["ndcg"] = de.ndcg;
    if (de.tau_degenerate) dj["tau_degenerate"] = true;
    if (de.rho_degenerate) dj["rho_degenerate"] = true;
    docs.push_back(std::move(dj));
  }
  j["documents"] = std::move(docs);
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  EvalReport r;
  r.scorer = j.value("scorer", std::string{});
  r.task = j.value("task", std::string{});
  r.train_task = j.value("train_task", std::string{});
  r.config_fingerprint = j.value("config_fingerprint", std::string{});
  r.document_count = j.value("document_count", size_t{0});
  r.degenerate_correlation_count = j.value("degenerate_correlation_count", size_t{0});
  r.k_list = j.value("k_list", std::vector<size_t>{1, 2, 3});
  const auto& means = j.at("means");
  r.mean_top_k_pct.clear();
  for (size_t k : r.k_list) r.mean_top_k_pct.push_back(means.at("top_" + std::to_string(k) + "_pct").get<double>());
  r.mean_mse = means.at("mse").get<double>();
  r.mean_mae = means.at("mae").get<double>();
  r.mean_tau = means.at("tau").get<double>();
  r.mean_rho = means.at("rho").get<double>();
  r.mean_ndcg = means.at("ndcg").get<double>();
  if (j.contains("documents")) {
    for (const auto& dj : j["documents"]) {
      DocumentEval de;
      de.id = dj.value("id", std::string{});
      de.top_k = dj.value("top_k", std::vector<double>{});
      de.mse = dj.value("mse", 0.0);
      de.mae = dj.value("mae", 0.0);
      de.tau = dj.value("tau", 0.0);
      de.rho = dj.value("rho", 0.0);
      de.ndcg = dj.value("ndcg", 0.0);
      de.tau_degenerate = dj.value("tau_degenerate", false);
      de.rho_degenerate = dj.value("rho_degenerate", false);
      r.documents.push_back(std::move(de));
    }
  }
  return r;
}

std::string reports_to_table(const std::vector<EvalReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "Scorer" << std::setw(12) << "TL";
  std::vector<size_t> k_list = reports.empty() ? std::vector<size_t>{1, 2, 3} : reports[0].k_list;
  for (size_t k : k_list) os << std::right << std::setw(8) << ("Top" + std::to_string(k));
  os << std::setw(10) << "MSE" << std::setw(10) << "MAE" << std::setw(10) << "tau"
     << std::setw(10) << "rho" << std::setw(10) << "nDCG" << "\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(14) << r.scorer << std::setw(12)
       << (r.train_task.empty() ? "-" : r.train_task);
    os << std::fixed;
    for (double v : r.mean_top_k_pct) os << std::right << std::setw(8) << std::setprecision(2) << v;
    os << std::setw(10) << std::setprecision(4) << r.mean_mse << std::setw(10) << r.mean_mae
       << std::setw(10) << r.mean_tau << std::setw(10) << r.mean_rho << std::setw(10)
       << r.mean_ndcg << "\n";
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

double paired_permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                                 int iterations, uint64_t seed) {
  check_lengths(a, b, "paired_permutation_pvalue");
  if (a.empty()) return 1.0;
  std::vector<double> diff(a.size());
  double observed = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    diff[i] = a[i] - b[i];
    observed += diff[i];
  }
  observed = std::fabs(observed);
  Rng rng(seed);
  int at_least = 0;
  for (int it = 0; it < iterations; ++it) {
    double stat = 0.0;
    for (double d : diff) stat += rng.uniform() < 0.5 ? d : -d;
    if (std::fabs(stat) >= observed - 1e-15) ++at_least;
  }
  return (at_least + 1.0) / (iterations + 1.0);
}

}  // namespace popcast
