#include "uwsnn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uwsnn/rng.hpp"

namespace uwsnn {

namespace {

// Scaled feature matrix and scaled label vector for a set of rows.
std::pair<Matrix, std::vector<double>> scaled_features_and_labels(
    const ScalerParams& scaler, const std::vector<DatasetRow>& rows) {
  Matrix x(static_cast<int>(rows.size()), kFeatureCount);
  std::vector<double> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < kFeatureCount; ++c) {
      x(static_cast<int>(i), c) = scaler.scale_column(c, column_value(rows[i], c));
    }
    y[i] = scaler.scale_column(kLabelColumn, column_value(rows[i], kLabelColumn));
  }
  return {std::move(x), std::move(y)};
}

}  // namespace

EvaluationReport accuracy(const std::vector<std::int64_t>& y_true,
                          const std::vector<std::int64_t>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("prediction and truth vectors disagree on length");
  }
  if (y_true.empty()) throw std::invalid_argument("accuracy needs at least one example");
  double deviation_sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] <= 0) {
      throw std::domain_error("true labels must be positive for relative deviation");
    }
    deviation_sum += std::abs(static_cast<double>(y_pred[i] - y_true[i])) /
                     static_cast<double>(y_true[i]);
  }
  EvaluationReport report;
  report.samples = y_true.size();
  report.mean_relative_deviation = deviation_sum / static_cast<double>(y_true.size());
  report.accuracy = 1.0 - report.mean_relative_deviation;
  return report;
}

double baseline_mse(const std::vector<double>& train_targets,
                    const std::vector<double>& test_targets) {
  if (train_targets.empty() || test_targets.empty()) {
    throw std::invalid_argument("baseline needs nonempty target vectors");
  }
  double mean = 0.0;
  for (const double t : train_targets) mean += t;
  mean /= static_cast<double>(train_targets.size());
  double sse = 0.0;
  for (const double t : test_targets) sse += (t - mean) * (t - mean);
  return sse / static_cast<double>(test_targets.size());
}

EvaluationReport evaluate_model(const MlpModel& model, const ScalerParams& scaler,
                                const std::vector<DatasetRow>& test_rows,
                                const std::vector<DatasetRow>& baseline_rows) {
  if (test_rows.empty()) throw std::invalid_argument("evaluation needs test rows");

  std::vector<std::int64_t> y_true(test_rows.size());
  std::vector<std::int64_t> y_pred(test_rows.size());
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    const auto& r = test_rows[i];
    y_true[i] = r.uws;
    y_pred[i] = predict_uws(
        model, scaler,
        {r.input_degree, r.input_weight, r.control_degree, r.control_weight});
  }
  EvaluationReport report = accuracy(y_true, y_pred);

  const auto [x, y] = scaled_features_and_labels(scaler, test_rows);
  report.scaled_mse = mean_squared_error(forward(model, x), y);

  std::vector<double> baseline_targets(baseline_rows.size());
  for (std::size_t i = 0; i < baseline_rows.size(); ++i) {
    baseline_targets[i] = scaler.scale_column(kLabelColumn, column_value(baseline_rows[i], kLabelColumn));
  }
  report.baseline_scaled_mse = baseline_mse(baseline_targets, y);
  return report;
}

ImportanceReport permutation_importance(const MlpModel& model, const ScalerParams& scaler,
                                        const std::vector<DatasetRow>& test_rows,
                                        int repeats, std::uint64_t seed) {
  if (test_rows.size() < 2) {
    throw std::domain_error("permutation importance needs at least 2 rows");
  }
  if (repeats < 2) throw std::domain_error("permutation importance needs repeats >= 2");

  const auto [x, y] = scaled_features_and_labels(scaler, test_rows);
  const double base = mean_squared_error(forward(model, x), y);

  ImportanceReport report;
  report.baseline_scaled_mse = base;
  report.repeats = repeats;

  for (int feature = 0; feature < kFeatureCount; ++feature) {
    std::vector<double> increases(static_cast<std::size_t>(repeats));
    for (int rep = 0; rep < repeats; ++rep) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(feature),
                                      static_cast<std::uint64_t>(rep)));
      std::vector<double> column(test_rows.size());
      for (std::size_t i = 0; i < column.size(); ++i) column[i] = x(static_cast<int>(i), feature);
      deterministic_shuffle(column, rng);
      Matrix shuffled = x;
      for (std::size_t i = 0; i < column.size(); ++i) shuffled(static_cast<int>(i), feature) = column[i];
      increases[static_cast<std::size_t>(rep)] =
          mean_squared_error(forward(model, shuffled), y) - base;
    }
    double mean = 0.0;
    for (const double v : increases) mean += v;
    mean /= static_cast<double>(repeats);
    double var = 0.0;
    for (const double v : increases) var += (v - mean) * (v - mean);
    var /= static_cast<double>(repeats);
    report.features.push_back(FeatureImportance{
        kColumnNames[static_cast<std::size_t>(feature)], mean, std::sqrt(var)});
  }

  std::stable_sort(report.features.begin(), report.features.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) {
                     return a.mean > b.mean;
                   });
  return report;
}

std::string model_summary(const MlpModel& model) {
  const auto counts = per_layer_param_counts(model.layer_sizes);
  std::ostringstream out;
  out << "layer      output  params\n";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out << "dense_" << (k + 1);
    out << std::string(k + 1 >= 10 ? 2 : 3, ' ');
    const std::string width = std::to_string(model.layer_sizes[k + 1]);
    out << std::string(width.size() < 7 ? 7 - width.size() : 1, ' ') << width;
    const std::string params = std::to_string(counts[k]);
    out << std::string(params.size() < 8 ? 8 - params.size() : 1, ' ') << params << '\n';
  }
  out << "total params: " << param_count(model.layer_sizes) << '\n';
  return out.str();
}

}  // namespace uwsnn
