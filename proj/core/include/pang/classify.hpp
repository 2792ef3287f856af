#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pang/features.hpp"
#include "pang/graph.hpp"
#include "pang/matcher.hpp"
#include "pang/miner.hpp"
#include "pang/pattern_select.hpp"

namespace pang {

/// Linear decision function sign(w.x + b). `c` and `seed` record how it was
/// trained.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double c = 1.0;
  std::uint64_t seed = 0;

  /// Throws ArgumentError on a dimension mismatch.
  double decision(std::span<const double> x) const;
};

struct TrainOptions {
  double c = 1.0;
  std::uint64_t seed = 42;
  double tolerance = 1e-4;  ///< stop when the projected-gradient spread falls below this
  std::size_t max_epochs = 5000;
};

/// Soft-margin linear SVM:
///   min 1/2 (|w|^2 + b^2) + C sum_i max(0, 1 - y_i (w.x_i + b))
/// solved by dual coordinate descent with a seeded visiting order per epoch.
/// The bias is learned as the weight of a constant feature 1. Identical inputs
/// and seed give a bit-identical model. Throws ArgumentError unless both
/// classes are present.
LinearModel train(std::span<const std::vector<double>> rows, std::span<const GraphLabel> labels,
                  const TrainOptions& options = {});

/// A iff w.x + b > 0; a zero margin predicts N.
GraphLabel predict(const LinearModel& model, std::span<const double> x);

/// Harmonic mean of precision and recall for `positive`; 0 when both are 0.
double f_score(std::span<const GraphLabel> predictions, std::span<const GraphLabel> golds, GraphLabel positive);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  // Confusion counts with A as the positive class.
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  ClassMetrics anomalous;
  ClassMetrics normal;
  std::size_t patterns_mined = 0;
  std::size_t patterns_in_family = 0;
  std::size_t patterns_used = 0;
};

struct EvalReport {
  std::vector<FoldResult> folds;
  double mean_f_anomalous = 0.0;
  double std_f_anomalous = 0.0;
  double mean_f_normal = 0.0;
  double std_f_normal = 0.0;
  bool stratified = true;
  std::vector<std::string> warnings;
};

struct PipelineConfig {
  PatternFamily family = PatternFamily::General;
  Representation mode = Representation::Binary;
  std::optional<std::size_t> s;  ///< nullopt = every pattern of the family
  MinSupport minsup = MinSupport::relative(0.1);
  std::size_t max_vertices = 10;
  std::size_t max_edges = 10;
  double c = 1.0;
  std::size_t k = 10;
  std::uint64_t seed = 42;
  bool normalize_classes = false;
  MatchMode induced_count_mode = MatchMode::Induced;
  bool log_scale = false;  ///< log1p on integer features
  bool mine_once = false;  ///< mine and rank once on the whole collection
  unsigned jobs = 1;
};

/// Instrumentation for tests: called with the collection indices each pattern
/// discovery step reads (fold = SIZE_MAX for a single whole-collection run).
struct CrossValidationHooks {
  std::function<void(std::size_t fold, std::span<const std::size_t> indices)> on_pattern_discovery;
  std::function<void(std::size_t fold, std::span<const std::size_t> test_indices)> on_fold;
};

/// k test folds over 0..labels.size()-1. Stratified by class when every class
/// has at least k members; `stratified` reports which was used.
std::vector<std::vector<std::size_t>> make_folds(std::span<const GraphLabel> labels, std::size_t k,
                                                 std::uint64_t seed, bool* stratified = nullptr);

/// Patterns selected on a training collection, in column order.
struct SelectedPatterns {
  std::vector<Pattern> patterns;
  std::vector<double> scores;
  std::size_t mined = 0;
  std::size_t in_family = 0;
};

/// Mine, filter to the configured family, score and keep the top s.
SelectedPatterns discover_patterns(const LabeledCollection& training, const PipelineConfig& config);

/// k-fold evaluation: per fold, patterns are discovered on the training
/// graphs only (unless mine_once), both splits vectorized, a linear SVM
/// trained and the held-out fold scored. Throws ArgumentError if |G| < k.
EvalReport cross_validate(const LabeledCollection& collection, const PipelineConfig& config,
                          const CrossValidationHooks& hooks = {});

/// Human-readable summary.
std::string format_report(const EvalReport& report, const PipelineConfig& config);
/// Tab-separated rows: one per fold, then mean and std rows.
std::string format_summary_tsv(const EvalReport& report);

}  // namespace pang
