#include "uwsnn/mlp.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "uwsnn/digest.hpp"
#include "uwsnn/errors.hpp"
#include "uwsnn/rng.hpp"

namespace uwsnn {

namespace {

void check_layer_sizes(const std::vector<int>& layer_sizes) {
  if (layer_sizes.size() < 2) {
    throw std::domain_error("a network needs at least an input and an output layer");
  }
  for (const int s : layer_sizes) {
    if (s < 1) throw std::domain_error("every layer needs at least one neuron");
  }
}

std::string digest_parameters(const MlpModel& model) {
  std::uint64_t state = kFnvOffsetBasis;
  auto absorb = [&state](const double* values, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      char bytes[sizeof(double)];
      std::memcpy(bytes, &values[i], sizeof(double));
      state = fnv1a64(std::string_view(bytes, sizeof(double)), state);
    }
  };
  for (const auto& w : model.weights) absorb(w.data.data(), w.data.size());
  for (const auto& b : model.biases) absorb(b.data(), b.size());
  return to_hex(state);
}

}  // namespace

std::int64_t param_count(const std::vector<int>& layer_sizes) {
  check_layer_sizes(layer_sizes);
  std::int64_t total = 0;
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    total += static_cast<std::int64_t>(layer_sizes[k]) * layer_sizes[k + 1] + layer_sizes[k + 1];
  }
  return total;
}

std::vector<std::int64_t> per_layer_param_counts(const std::vector<int>& layer_sizes) {
  check_layer_sizes(layer_sizes);
  std::vector<std::int64_t> counts;
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    counts.push_back(static_cast<std::int64_t>(layer_sizes[k]) * layer_sizes[k + 1] +
                     layer_sizes[k + 1]);
  }
  return counts;
}

MlpModel init_model(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  check_layer_sizes(layer_sizes);
  MlpModel model;
  model.layer_sizes = layer_sizes;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    const int fan_in = layer_sizes[k];
    const int fan_out = layer_sizes[k + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    Matrix w(fan_out, fan_in);
    for (double& v : w.data) v = (2.0 * uniform_unit(rng) - 1.0) * bound;
    model.weights.push_back(std::move(w));
    model.biases.emplace_back(static_cast<std::size_t>(fan_out), 0.0);
  }
  return model;
}

Matrix forward(const MlpModel& model, const Matrix& inputs, ForwardCache* cache) {
  if (model.layer_sizes.empty() || inputs.cols != model.layer_sizes.front()) {
    throw std::invalid_argument("input width does not match the network's input layer");
  }
  if (cache) {
    cache->activations.clear();
    cache->activations.push_back(inputs);
  }
  Matrix h = inputs;
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    const Matrix& w = model.weights[k];
    const std::vector<double>& b = model.biases[k];
    Matrix z(h.rows, w.rows);
    for (int i = 0; i < h.rows; ++i) {
      for (int j = 0; j < w.rows; ++j) {
        double acc = b[static_cast<std::size_t>(j)];
        for (int c = 0; c < w.cols; ++c) acc += h(i, c) * w(j, c);
        z(i, j) = acc > 0.0 ? acc : 0.0;
      }
    }
    h = std::move(z);
    if (cache) cache->activations.push_back(h);
  }
  return h;
}

namespace {

double sum_squared_residuals(const Matrix& predictions, const std::vector<double>& targets) {
  if (predictions.cols != 1) {
    throw std::invalid_argument("predictions must be a single-column matrix");
  }
  if (static_cast<std::size_t>(predictions.rows) != targets.size()) {
    throw std::invalid_argument("predictions and targets disagree on length");
  }
  if (targets.empty()) throw std::domain_error("loss needs at least one example");
  double sse = 0.0;
  for (int i = 0; i < predictions.rows; ++i) {
    const double r = predictions(i, 0) - targets[static_cast<std::size_t>(i)];
    sse += r * r;
  }
  return sse;
}

}  // namespace

double cost(const Matrix& predictions, const std::vector<double>& targets) {
  return sum_squared_residuals(predictions, targets) / (2.0 * static_cast<double>(targets.size()));
}

double mean_squared_error(const Matrix& predictions, const std::vector<double>& targets) {
  return sum_squared_residuals(predictions, targets) / static_cast<double>(targets.size());
}

Gradients backward(const MlpModel& model, const ForwardCache& cache,
                   const std::vector<double>& targets) {
  const std::size_t layer_count = model.weights.size();
  if (cache.activations.size() != layer_count + 1) {
    throw std::domain_error("forward cache does not match the model");
  }
  for (std::size_t k = 0; k < layer_count; ++k) {
    if (cache.activations[k + 1].cols != model.layer_sizes[k + 1]) {
      throw std::domain_error("forward cache does not match the model");
    }
  }
  const Matrix& output = cache.activations.back();
  if (output.cols != 1) {
    throw std::domain_error("cost gradients are defined for single-output networks");
  }
  const int m = output.rows;
  if (static_cast<std::size_t>(m) != targets.size()) {
    throw std::domain_error("targets do not match the cached batch");
  }

  Gradients grads;
  grads.weights.resize(layer_count);
  grads.biases.resize(layer_count);

  // dC/dz for the output layer; relu gate: activation 0 means gradient 0.
  Matrix delta(m, output.cols);
  for (int i = 0; i < m; ++i) {
    const double h = output(i, 0);
    delta(i, 0) = h > 0.0 ? (h - targets[static_cast<std::size_t>(i)]) / m : 0.0;
  }

  for (std::size_t k = layer_count; k-- > 0;) {
    const Matrix& prev = cache.activations[k];
    const Matrix& w = model.weights[k];
    Matrix& dw = grads.weights[k];
    dw = Matrix(w.rows, w.cols);
    std::vector<double>& db = grads.biases[k];
    db.assign(static_cast<std::size_t>(w.rows), 0.0);

    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < w.rows; ++j) {
        const double d = delta(i, j);
        if (d == 0.0) continue;
        db[static_cast<std::size_t>(j)] += d;
        for (int c = 0; c < w.cols; ++c) dw(j, c) += d * prev(i, c);
      }
    }

    if (k > 0) {
      Matrix next_delta(m, w.cols);
      for (int i = 0; i < m; ++i) {
        for (int c = 0; c < w.cols; ++c) {
          if (prev(i, c) <= 0.0) continue;  // relu gate on the previous layer
          double acc = 0.0;
          for (int j = 0; j < w.rows; ++j) acc += delta(i, j) * w(j, c);
          next_delta(i, c) = acc;
        }
      }
      delta = std::move(next_delta);
    }
  }
  return grads;
}

AdagradState make_adagrad_state(const MlpModel& model) {
  AdagradState state;
  for (const auto& w : model.weights) state.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : model.biases) state.biases.emplace_back(b.size(), 0.0);
  return state;
}

void adagrad_step(MlpModel& model, const Gradients& gradients, AdagradState& state,
                  double learning_rate, double epsilon) {
  if (gradients.weights.size() != model.weights.size() ||
      state.weights.size() != model.weights.size()) {
    throw std::invalid_argument("gradient or accumulator shapes do not match the model");
  }
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    auto& w = model.weights[k].data;
    const auto& g = gradients.weights[k].data;
    auto& acc = state.weights[k].data;
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc[i] += g[i] * g[i];
      w[i] -= learning_rate * g[i] / (std::sqrt(acc[i]) + epsilon);
    }
    auto& b = model.biases[k];
    const auto& gb = gradients.biases[k];
    auto& accb = state.biases[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      accb[i] += gb[i] * gb[i];
      b[i] -= learning_rate * gb[i] / (std::sqrt(accb[i]) + epsilon);
    }
  }
}

std::int64_t batches_per_epoch(std::int64_t rows, int batch_size) {
  if (rows < 1 || batch_size < 1) {
    throw std::domain_error("rows and batch size must be positive");
  }
  return (rows + batch_size - 1) / batch_size;
}

TrainReport train(MlpModel& model, const Matrix& features,
                  const std::vector<double>& targets, const TrainConfig& config) {
  if (features.rows < 1 || static_cast<std::size_t>(features.rows) != targets.size()) {
    throw std::invalid_argument("features and targets disagree on length");
  }
  if (config.learning_rate < 0.0) throw std::domain_error("learning rate must be >= 0");
  if (config.batch_size < 1) throw std::domain_error("batch size must be positive");
  if (config.max_epochs < 1) throw std::domain_error("max epochs must be positive");
  if (config.patience < 1) throw std::domain_error("patience must be positive");
  if (config.adagrad_epsilon <= 0.0) throw std::domain_error("epsilon must be positive");
  if (!(config.validation_fraction >= 0.0 && config.validation_fraction < 0.5)) {
    throw std::domain_error("validation fraction must lie in [0, 0.5)");
  }

  const int total = features.rows;
  const int validation_count =
      static_cast<int>(std::llround(config.validation_fraction * total));
  const int pool_count = total - validation_count;
  if (config.batch_size > pool_count) {
    throw std::domain_error("batch size exceeds the number of training rows");
  }

  const int width = features.cols;
  auto slice = [&](const std::vector<int>& rows_wanted) {
    Matrix x(static_cast<int>(rows_wanted.size()), width);
    std::vector<double> y(rows_wanted.size());
    for (std::size_t i = 0; i < rows_wanted.size(); ++i) {
      const int r = rows_wanted[i];
      for (int c = 0; c < width; ++c) x(static_cast<int>(i), c) = features(r, c);
      y[i] = targets[static_cast<std::size_t>(r)];
    }
    return std::make_pair(std::move(x), std::move(y));
  };

  std::vector<int> validation_rows(static_cast<std::size_t>(validation_count));
  std::iota(validation_rows.begin(), validation_rows.end(), pool_count);
  const auto [val_x, val_y] = slice(validation_rows);

  AdagradState state = make_adagrad_state(model);
  std::mt19937_64 rng(config.seed);
  std::vector<int> order(static_cast<std::size_t>(pool_count));
  std::iota(order.begin(), order.end(), 0);

  TrainReport report;
  MlpModel best = model;
  double best_loss = std::numeric_limits<double>::infinity();
  int best_epoch = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    deterministic_shuffle(order, rng);
    double epoch_sse = 0.0;
    const std::int64_t batches = batches_per_epoch(pool_count, config.batch_size);
    for (std::int64_t b = 0; b < batches; ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * config.batch_size;
      const std::size_t end =
          std::min(begin + static_cast<std::size_t>(config.batch_size), order.size());
      const std::vector<int> batch_rows(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                        order.begin() + static_cast<std::ptrdiff_t>(end));
      const auto [batch_x, batch_y] = slice(batch_rows);
      ForwardCache cache;
      const Matrix out = forward(model, batch_x, &cache);
      epoch_sse += sum_squared_residuals(out, batch_y);
      const Gradients grads = backward(model, cache, batch_y);
      adagrad_step(model, grads, state, config.learning_rate, config.adagrad_epsilon);
    }

    const double train_mse = epoch_sse / pool_count;
    const double monitored =
        validation_count > 0 ? mean_squared_error(forward(model, val_x), val_y) : train_mse;
    report.train_loss.push_back(train_mse);
    report.validation_loss.push_back(monitored);
    report.stopped_epoch = epoch;

    if (!std::isfinite(train_mse) || !std::isfinite(monitored)) {
      throw TrainingError("training diverged at epoch " + std::to_string(epoch));
    }
    if (monitored < best_loss) {
      best_loss = monitored;
      best = model;
      best_epoch = epoch;
    }
    if (epoch - best_epoch >= config.patience) break;
  }

  model = best;
  report.best_epoch = best_epoch;
  report.snapshot_id = digest_parameters(model);
  return report;
}

std::int64_t predict_uws(const MlpModel& model, const ScalerParams& scaler,
                         const std::array<int, 4>& raw_features) {
  if (!scaler.fitted) throw std::domain_error("scaler has not been fitted");
  Matrix x(1, kFeatureCount);
  for (int c = 0; c < kFeatureCount; ++c) {
    x(0, c) = scaler.scale_column(c, static_cast<double>(raw_features[static_cast<std::size_t>(c)]));
  }
  const double scaled = forward(model, x)(0, 0);
  return static_cast<std::int64_t>(std::trunc(inverse_transform_label(scaler, scaled)));
}

std::string model_to_json(const ModelFile& file) {
  nlohmann::json j;
  j["version"] = kModelFormatVersion;
  j["layer_sizes"] = file.model.layer_sizes;
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : file.model.weights) weights.push_back(w.data);
  j["weights"] = std::move(weights);
  j["biases"] = file.model.biases;
  j["scaler"] = {{"min", file.scaler.min}, {"max", file.scaler.max}};
  j["metadata"] = {{"seed", file.seed},
                   {"config",
                    {{"learning_rate", file.config.learning_rate},
                     {"batch_size", file.config.batch_size},
                     {"max_epochs", file.config.max_epochs},
                     {"patience", file.config.patience},
                     {"validation_fraction", file.config.validation_fraction},
                     {"seed", file.config.seed},
                     {"adagrad_epsilon", file.config.adagrad_epsilon}}}};
  return j.dump(2) + "\n";
}

void save_model(const std::filesystem::path& path, const ModelFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << model_to_json(file);
  if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed model file " + path.string() + ": " + e.what());
  }

  try {
    if (!j.contains("version") || j.at("version").get<int>() != kModelFormatVersion) {
      throw ParseError("unsupported model format version in " + path.string());
    }
    ModelFile file;
    file.model.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    check_layer_sizes(file.model.layer_sizes);
    const auto& sizes = file.model.layer_sizes;
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1) {
      throw ParseError("layer count mismatch in " + path.string());
    }
    for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
      Matrix w(sizes[k + 1], sizes[k]);
      const auto values = weights.at(k).get<std::vector<double>>();
      if (values.size() != w.data.size()) {
        throw ParseError("weight matrix " + std::to_string(k) + " has the wrong size in " +
                         path.string());
      }
      w.data = values;
      file.model.weights.push_back(std::move(w));
      const auto b = biases.at(k).get<std::vector<double>>();
      if (b.size() != static_cast<std::size_t>(sizes[k + 1])) {
        throw ParseError("bias vector " + std::to_string(k) + " has the wrong size in " +
                         path.string());
      }
      file.model.biases.push_back(b);
    }
    const auto& scaler = j.at("scaler");
    const auto mins = scaler.at("min").get<std::vector<double>>();
    const auto maxs = scaler.at("max").get<std::vector<double>>();
    if (mins.size() != 5 || maxs.size() != 5) {
      throw ParseError("scaler must carry 5 columns in " + path.string());
    }
    std::copy(mins.begin(), mins.end(), file.scaler.min.begin());
    std::copy(maxs.begin(), maxs.end(), file.scaler.max.begin());
    file.scaler.fitted = true;
    const auto& metadata = j.at("metadata");
    file.seed = metadata.at("seed").get<std::uint64_t>();
    const auto& config = metadata.at("config");
    file.config.learning_rate = config.at("learning_rate").get<double>();
    file.config.batch_size = config.at("batch_size").get<int>();
    file.config.max_epochs = config.at("max_epochs").get<int>();
    file.config.patience = config.at("patience").get<int>();
    file.config.validation_fraction = config.at("validation_fraction").get<double>();
    file.config.seed = config.at("seed").get<std::uint64_t>();
    file.config.adagrad_epsilon = config.at("adagrad_epsilon").get<double>();
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed model file " + path.string() + ": " + e.what());
  }
}

}  // namespace uwsnn
