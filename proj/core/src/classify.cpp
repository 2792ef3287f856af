#include "pang/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "pang/error.hpp"

namespace pang {

namespace {

/// Uniform integer in [0, bound) from the raw engine output; the engine's
/// sequence is fixed by the standard, this keeps the whole draw portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ClassMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

std::vector<std::vector<double>> to_rows(const FeatureMatrix& h, bool log_scale) {
  std::vector<std::vector<double>> rows(h.rows(), std::vector<double>(h.cols(), 0.0));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    auto src = h.row(r);
    for (std::size_t c = 0; c < h.cols(); ++c) {
      const auto v = static_cast<double>(src[c]);
      rows[r][c] = log_scale ? std::log1p(v) : v;
    }
  }
  return rows;
}

std::string fmt(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

}  // namespace

double LinearModel::decision(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw ArgumentError("feature vector has " + std::to_string(x.size()) + " entries, model expects " +
                        std::to_string(weights.size()));
  }
  return dot(weights, x) + bias;
}

LinearModel train(std::span<const std::vector<double>> rows, std::span<const GraphLabel> labels,
                  const TrainOptions& options) {
  if (rows.size() != labels.size()) throw ArgumentError("train: rows and labels differ in length");
  if (!(options.c > 0.0)) throw ArgumentError("train: C must be positive");
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), GraphLabel::Anomalous));
  if (positives == 0 || positives == labels.size()) {
    throw ArgumentError("training fold contains a single class; use stratified folds");
  }
  const std::size_t n = rows.size();
  const std::size_t dims = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dims) throw ArgumentError("train: rows differ in length");
  }

  LinearModel model;
  model.weights.assign(dims, 0.0);
  model.c = options.c;
  model.seed = options.seed;

  std::vector<double> y(n);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = labels[i] == GraphLabel::Anomalous ? 1.0 : -1.0;
    diag[i] = dot(rows[i], rows[i]) + 1.0;  // +1 for the bias feature
  }
  std::vector<double> alpha(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);
  const double c = options.c;

  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    shuffle(order, rng);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t i : order) {
      const double g = y[i] * (dot(model.weights, rows[i]) + model.bias) - 1.0;
      double pg = g;
      if (alpha[i] == 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] == c) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::fabs(pg) <= 1e-12) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - g / diag[i], 0.0, c);
      const double delta = (alpha[i] - old) * y[i];
      if (delta == 0.0) continue;
      for (std::size_t d = 0; d < dims; ++d) model.weights[d] += delta * rows[i][d];
      model.bias += delta;
    }
    if (pg_max - pg_min < options.tolerance) break;
  }
  return model;
}

GraphLabel predict(const LinearModel& model, std::span<const double> x) {
  return model.decision(x) > 0.0 ? GraphLabel::Anomalous : GraphLabel::Normal;
}

double f_score(std::span<const GraphLabel> predictions, std::span<const GraphLabel> golds, GraphLabel positive) {
  if (predictions.size() != golds.size()) throw ArgumentError("f_score: predictions and golds differ in length");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const bool p = predictions[i] == positive;
    const bool g = golds[i] == positive;
    tp += p && g;
    fp += p && !g;
    fn += !p && g;
  }
  return metrics(tp, fp, fn).f;
}

std::vector<std::vector<std::size_t>> make_folds(std::span<const GraphLabel> labels, std::size_t k,
                                                 std::uint64_t seed, bool* stratified) {
  if (k < 2) throw ArgumentError("cross-validation needs k >= 2");
  if (labels.size() < k) {
    throw ArgumentError("collection has " + std::to_string(labels.size()) + " graphs, fewer than k = " +
                        std::to_string(k));
  }
  std::vector<std::size_t> a, n;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == GraphLabel::Anomalous ? a : n).push_back(i);
  const bool strat = a.size() >= k && n.size() >= k;
  if (stratified) *stratified = strat;

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> dealt;
  if (strat) {
    shuffle(a, rng);
    shuffle(n, rng);
    dealt = a;
    dealt.insert(dealt.end(), n.begin(), n.end());
  } else {
    dealt.resize(labels.size());
    std::iota(dealt.begin(), dealt.end(), std::size_t{0});
    shuffle(dealt, rng);
  }
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t p = 0; p < dealt.size(); ++p) folds[p % k].push_back(dealt[p]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

SelectedPatterns discover_patterns(const LabeledCollection& training, const PipelineConfig& config) {
  MinerOptions mopts;
  mopts.minsup = config.minsup;
  mopts.max_vertices = config.max_vertices;
  mopts.max_edges = config.max_edges;
  mopts.jobs = config.jobs;
  auto mined = mine(training, mopts);

  SelectedPatterns out;
  out.mined = mined.size();
  std::vector<Pattern> all;
  std::vector<PatternStats> general;
  all.reserve(mined.size());
  general.reserve(mined.size());
  for (auto& mp : mined) {
    general.push_back({mp.gf_a, mp.gf_n, mp.gf_a, mp.gf_n});
    all.push_back(std::move(mp.pattern));
  }

  const bool want_sf = config.mode == Representation::Integer;
  std::vector<Pattern> candidates;
  std::vector<PatternStats> stats;
  switch (config.family) {
    case PatternFamily::General:
      candidates = std::move(all);
      stats = want_sf ? compute_stats(candidates, training, MatchMode::General, true, config.jobs) : general;
      break;
    case PatternFamily::Closed: {
      for (std::size_t i : filter_closed(all, general, config.jobs)) {
        candidates.push_back(all[i]);
        stats.push_back(general[i]);
      }
      if (want_sf) stats = compute_stats(candidates, training, MatchMode::General, true, config.jobs);
      break;
    }
    case PatternFamily::Induced:
      for (std::size_t i : filter_induced(all, training, config.jobs)) candidates.push_back(all[i]);
      stats = compute_stats(candidates, training, MatchMode::Induced, want_sf, config.jobs);
      break;
  }
  out.in_family = candidates.size();
  if (candidates.empty()) return out;

  ScoreOptions sopts;
  sopts.kind = want_sf ? FrequencyKind::SF : FrequencyKind::GF;
  sopts.normalize_classes = config.normalize_classes;
  sopts.class_a = training.count(GraphLabel::Anomalous);
  sopts.class_n = training.count(GraphLabel::Normal);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& st : stats) scores.push_back(discrimination_score(st, sopts));

  const std::size_t s = config.s.value_or(candidates.size());
  for (std::size_t i : select_top(candidates, scores, stats, s)) {
    out.patterns.push_back(candidates[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

EvalReport cross_validate(const LabeledCollection& collection, const PipelineConfig& config,
                          const CrossValidationHooks& hooks) {
  if (config.s && *config.s == 0) throw ArgumentError("the number of selected patterns must be >= 1");
  EvalReport report;
  const auto folds = make_folds(collection.labels(), config.k, config.seed, &report.stratified);
  if (!report.stratified) {
    report.warnings.push_back("a class has fewer than k members; folds are not stratified");
  }

  std::vector<std::size_t> everything(collection.size());
  std::iota(everything.begin(), everything.end(), std::size_t{0});
  SelectedPatterns shared;
  if (config.mine_once) {
    if (hooks.on_pattern_discovery) hooks.on_pattern_discovery(static_cast<std::size_t>(-1), everything);
    shared = discover_patterns(collection, config);
  }

  std::vector<double> f_a, f_n;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto& test = folds[f];
    std::vector<std::size_t> train_idx;
    std::set_difference(everything.begin(), everything.end(), test.begin(), test.end(),
                        std::back_inserter(train_idx));
    if (hooks.on_fold) hooks.on_fold(f, test);
    const LabeledCollection train_set = collection.subset(train_idx);
    const LabeledCollection test_set = collection.subset(test);

    SelectedPatterns local;
    if (!config.mine_once) {
      if (hooks.on_pattern_discovery) hooks.on_pattern_discovery(f, train_idx);
      local = discover_patterns(train_set, config);
    }
    const SelectedPatterns& sel = config.mine_once ? shared : local;

    FoldResult fr;
    fr.fold = f;
    fr.train_size = train_idx.size();
    fr.test_size = test.size();
    fr.patterns_mined = sel.mined;
    fr.patterns_in_family = sel.in_family;
    fr.patterns_used = sel.patterns.size();

    const bool log_scale = config.log_scale && config.mode == Representation::Integer;
    const auto h_train = build_matrix(train_set, sel.patterns, config.mode, config.family,
                                      config.induced_count_mode, config.jobs);
    const auto h_test = build_matrix(test_set, sel.patterns, config.mode, config.family,
                                     config.induced_count_mode, config.jobs);
    const auto x_train = to_rows(h_train, log_scale);
    const auto x_test = to_rows(h_test, log_scale);

    TrainOptions topts;
    topts.c = config.c;
    topts.seed = config.seed + f;
    const LinearModel model = train(x_train, train_set.labels(), topts);

    for (std::size_t i = 0; i < x_test.size(); ++i) {
      const bool pred_a = predict(model, x_test[i]) == GraphLabel::Anomalous;
      const bool gold_a = test_set.label(i) == GraphLabel::Anomalous;
      fr.tp += pred_a && gold_a;
      fr.fp += pred_a && !gold_a;
      fr.fn += !pred_a && gold_a;
      fr.tn += !pred_a && !gold_a;
    }
    fr.anomalous = metrics(fr.tp, fr.fp, fr.fn);
    fr.normal = metrics(fr.tn, fr.fn, fr.fp);
    f_a.push_back(fr.anomalous.f);
    f_n.push_back(fr.normal.f);
    report.folds.push_back(fr);
  }
  std::tie(report.mean_f_anomalous, report.std_f_anomalous) = mean_std(f_a);
  std::tie(report.mean_f_normal, report.std_f_normal) = mean_std(f_n);
  return report;
}

std::string format_report(const EvalReport& report, const PipelineConfig& config) {
  std::ostringstream out;
  out << "representation: PANG_" << (config.family == PatternFamily::General   ? "Gen"
                                      : config.family == PatternFamily::Induced ? "Ind"
                                                                                : "Clo")
      << (config.mode == Representation::Binary ? "Bin" : "Occ") << '\n';
  out << "patterns: " << (config.s ? std::to_string(*config.s) : std::string("all")) << '\n';
  out << "folds: " << report.folds.size() << (report.stratified ? " (stratified)" : " (not stratified)")
      << ", seed " << config.seed << ", C " << fmt(config.c, 4) << '\n';
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  for (const auto& f : report.folds) {
    out << "fold " << f.fold << ": test " << f.test_size << ", patterns " << f.patterns_used << "/"
        << f.patterns_in_family << "/" << f.patterns_mined << ", TP " << f.tp << " FP " << f.fp << " FN " << f.fn
        << " TN " << f.tn << ", F(A) " << fmt(f.anomalous.f, 4) << ", F(N) " << fmt(f.normal.f, 4) << '\n';
  }
  out << "F-score anomalous: " << fmt(report.mean_f_anomalous, 4) << " (" << fmt(report.std_f_anomalous, 4)
      << ")\n";
  out << "F-score normal:    " << fmt(report.mean_f_normal, 4) << " (" << fmt(report.std_f_normal, 4) << ")\n";
  return out.str();
}

std::string format_summary_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "row\ttest_size\ttp\tfp\tfn\ttn\tprecision_a\trecall_a\tf_a\tprecision_n\trecall_n\tf_n\tpatterns\n";
  for (const auto& f : report.folds) {
    out << "fold" << f.fold << '\t' << f.test_size << '\t' << f.tp << '\t' << f.fp << '\t' << f.fn << '\t' << f.tn
        << '\t' << fmt(f.anomalous.precision, 6) << '\t' << fmt(f.anomalous.recall, 6) << '\t'
        << fmt(f.anomalous.f, 6) << '\t' << fmt(f.normal.precision, 6) << '\t' << fmt(f.normal.recall, 6) << '\t'
        << fmt(f.normal.f, 6) << '\t' << f.patterns_used << '\n';
  }
  out << "mean\t\t\t\t\t\t\t\t" << fmt(report.mean_f_anomalous, 6) << "\t\t\t" << fmt(report.mean_f_normal, 6)
      << "\t\n";
  out << "std\t\t\t\t\t\t\t\t" << fmt(report.std_f_anomalous, 6) << "\t\t\t" << fmt(report.std_f_normal, 6)
      << "\t\n";
  return out.str();
}

}  // namespace pang
