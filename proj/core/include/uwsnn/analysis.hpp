#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwsnn/mlp.hpp"

namespace uwsnn {

/// Relative-deviation accuracy plus the scaled-target error context.
struct EvaluationReport {
  double accuracy = 0.0;                 // 1 - mean relative deviation
  double mean_relative_deviation = 0.0;  // mean |pred - true| / true
  double scaled_mse = 0.0;               // model MSE on scaled targets
  double baseline_scaled_mse = 0.0;      // mean-predictor MSE on scaled targets
  std::size_t samples = 0;
};

/// accuracy = 1 - mean(|pred_i - true_i| / true_i). Every true value must be
/// positive. Only the deviation fields are filled here.
EvaluationReport accuracy(const std::vector<std::int64_t>& y_true,
                          const std::vector<std::int64_t>& y_pred);

/// MSE on test of the constant predictor equal to the training-target mean.
double baseline_mse(const std::vector<double>& train_targets,
                    const std::vector<double>& test_targets);

/// Full report: integer-truncated predictions drive the accuracy metric, raw
/// scaled network outputs drive the MSEs. `baseline_rows` supplies the
/// mean-predictor targets (usually the training set).
EvaluationReport evaluate_model(const MlpModel& model, const ScalerParams& scaler,
                                const std::vector<DatasetRow>& test_rows,
                                const std::vector<DatasetRow>& baseline_rows);

struct FeatureImportance {
  std::string feature;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over repeats
};

struct ImportanceReport {
  double baseline_scaled_mse = 0.0;
  int repeats = 0;
  std::vector<FeatureImportance> features;  // descending by mean importance
};

/// Permutation feature importance: for each feature, shuffle that column of
/// the test rows with a seeded generator, re-predict, and record the MSE
/// increase over the unshuffled baseline. Each (feature, repeat) pair derives
/// its own sub-seed, so results do not depend on evaluation order.
ImportanceReport permutation_importance(const MlpModel& model, const ScalerParams& scaler,
                                        const std::vector<DatasetRow>& test_rows,
                                        int repeats = 5, std::uint64_t seed = 0);

/// One line per non-input layer with output size and parameter count, plus
/// the total.
std::string model_summary(const MlpModel& model);

}  // namespace uwsnn
