#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uwsnn/dataset.hpp"

namespace uwsnn {

/// Minimal dense row-major matrix; all arithmetic in this project is double.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline const std::vector<int> kDefaultLayerSizes = {4, 100, 50, 20, 10, 1};

/// Fully connected feedforward network with the rectifier on every non-input
/// layer, output layer included. weights[k] has shape
/// layer_sizes[k+1] x layer_sizes[k] (rows = destination neurons).
struct MlpModel {
  std::vector<int> layer_sizes;
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

std::int64_t param_count(const std::vector<int>& layer_sizes);
std::vector<std::int64_t> per_layer_param_counts(const std::vector<int>& layer_sizes);

/// Weights drawn uniformly from +/- sqrt(6 / (fan_in + fan_out)) with the
/// seeded generator; biases zero. Same seed, same model.
MlpModel init_model(const std::vector<int>& layer_sizes, std::uint64_t seed);

struct ForwardCache {
  std::vector<Matrix> activations;  // activations[0] = input, back() = output
};

/// Batched forward pass: H_k = relu(H_{k-1} W_k^T + b_k).
Matrix forward(const MlpModel& model, const Matrix& inputs, ForwardCache* cache = nullptr);

/// Training cost C = (1 / 2M) sum of squared residuals.
double cost(const Matrix& predictions, const std::vector<double>& targets);

/// Plain mean squared error, i.e. 2 * cost.
double mean_squared_error(const Matrix& predictions, const std::vector<double>& targets);

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
};

/// Exact gradients of cost() for the batch held in `cache`. The rectifier
/// subgradient at 0 is taken as 0.
Gradients backward(const MlpModel& model, const ForwardCache& cache,
                   const std::vector<double>& targets);

/// Per-parameter accumulators of squared gradients, zero-initialized.
struct AdagradState {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
};

AdagradState make_adagrad_state(const MlpModel& model);

/// G += g^2; theta -= learning_rate * g / (sqrt(G) + epsilon).
void adagrad_step(MlpModel& model, const Gradients& gradients, AdagradState& state,
                  double learning_rate, double epsilon);

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 8;
  int max_epochs = 100;
  int patience = 10;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;
  double adagrad_epsilon = 1e-8;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct TrainReport {
  std::vector<double> train_loss;       // per-epoch MSE over the training slice
  std::vector<double> validation_loss;  // per-epoch MSE over the held-out slice
  int stopped_epoch = 0;
  int best_epoch = 0;
  std::string snapshot_id;  // digest of the returned parameter snapshot

  friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

/// ceil(rows / batch): mini-batches needed to cover the data once.
std::int64_t batches_per_epoch(std::int64_t rows, int batch_size);

/// Mini-batch Adagrad with a seeded shuffle per epoch. The last
/// validation_fraction slice of the given rows is held out for early
/// stopping; the best-validation snapshot is restored into `model`.
TrainReport train(MlpModel& model, const Matrix& features,
                  const std::vector<double>& targets, const TrainConfig& config);

/// Scales the four raw features, runs the network, unscales the label and
/// truncates toward zero.
std::int64_t predict_uws(const MlpModel& model, const ScalerParams& scaler,
                         const std::array<int, 4>& raw_features);

inline constexpr int kModelFormatVersion = 1;

/// On-disk bundle: everything needed to predict from raw features.
struct ModelFile {
  MlpModel model;
  ScalerParams scaler;
  std::uint64_t seed = 0;
  TrainConfig config;
};

std::string model_to_json(const ModelFile& file);
void save_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace uwsnn
