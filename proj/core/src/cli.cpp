#include "uwsnn/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "uwsnn/analysis.hpp"
#include "uwsnn/complexity.hpp"
#include "uwsnn/dataset.hpp"
#include "uwsnn/digest.hpp"
#include "uwsnn/errors.hpp"
#include "uwsnn/generator.hpp"
#include "uwsnn/gf2poly.hpp"
#include "uwsnn/mlp.hpp"
#include "uwsnn/version.hpp"

namespace uwsnn::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::uint64_t parse_hex_seed(const std::string& text) {
  std::size_t consumed = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &consumed, 16);
  } catch (const std::exception&) {
    throw ParseError("malformed hex seed '" + text + "'");
  }
  if (consumed != text.size() || text.empty()) {
    throw ParseError("malformed hex seed '" + text + "'");
  }
  if (value == 0) throw std::domain_error("seed must be nonzero");
  return value;
}

std::string read_bits_from_stdin() {
  std::string raw((std::istreambuf_iterator<char>(std::cin)),
                  std::istreambuf_iterator<char>());
  std::string bits;
  bits.reserve(raw.size());
  for (const char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) bits.push_back(c);
  }
  return bits;
}

/// Writes through a temporary file and renames, so a failed run never leaves
/// a truncated artifact behind.
void write_text_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

json file_entry(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return json{{"path", path.string()}, {"fnv1a64", to_hex(fnv1a64(bytes))}};
}

json content_entry(const fs::path& path, const std::string& content) {
  return json{{"path", path.string()}, {"fnv1a64", to_hex(fnv1a64(content))}};
}

struct ManifestBuilder {
  json doc;
  Clock::time_point started = Clock::now();

  ManifestBuilder(const std::string& subcommand, json flags) {
    doc["tool"] = "uwsnn";
    doc["version"] = kVersion;
    doc["subcommand"] = subcommand;
    doc["flags"] = std::move(flags);
    doc["inputs"] = json::array();
    doc["outputs"] = json::array();
  }

  void add_input(const fs::path& path) { doc["inputs"].push_back(file_entry(path)); }
  void add_output(const fs::path& path, const std::string& content) {
    doc["outputs"].push_back(content_entry(path, content));
  }

  /// Writes the manifest as a sidecar next to `artifact`.
  void write_beside(const fs::path& artifact) {
    doc["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             Clock::now() - started)
                             .count();
    write_text_file(artifact.string() + ".manifest.json", doc.dump(2) + "\n");
  }

  void write_to(const fs::path& manifest_path) {
    doc["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             Clock::now() - started)
                             .count();
    write_text_file(manifest_path, doc.dump(2) + "\n");
  }
};

json evaluation_to_json(const EvaluationReport& report) {
  return json{{"samples", report.samples},
              {"accuracy", report.accuracy},
              {"mean_relative_deviation", report.mean_relative_deviation},
              {"scaled_mse", report.scaled_mse},
              {"baseline_scaled_mse", report.baseline_scaled_mse}};
}

json importance_to_json(const ImportanceReport& report) {
  json features = json::array();
  for (const auto& f : report.features) {
    features.push_back({{"feature", f.feature}, {"mean", f.mean}, {"stddev", f.stddev}});
  }
  return json{{"baseline_scaled_mse", report.baseline_scaled_mse},
              {"repeats", report.repeats},
              {"features", std::move(features)}};
}

std::string evaluation_text(const EvaluationReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "samples                  " << report.samples << '\n'
      << "accuracy                 " << report.accuracy << '\n'
      << "mean relative deviation  " << report.mean_relative_deviation << '\n'
      << "scaled mse               " << report.scaled_mse << '\n'
      << "baseline scaled mse      " << report.baseline_scaled_mse << '\n';
  return out.str();
}

std::string importance_text(const ImportanceReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "baseline scaled mse " << report.baseline_scaled_mse << " (" << report.repeats
      << " repeats)\n";
  out << "feature            mean        std\n";
  for (const auto& f : report.features) {
    out << f.feature << std::string(f.feature.size() < 17 ? 17 - f.feature.size() : 1, ' ')
        << f.mean << "    " << f.stddev << '\n';
  }
  return out.str();
}

std::vector<int> parse_degree_spec(const std::string& spec) {
  std::vector<int> degrees;
  std::stringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) throw ParseError("empty item in degree list '" + spec + "'");
    const std::size_t dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        degrees.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        if (hi < lo) throw ParseError("empty range '" + item + "'");
        for (int d = lo; d <= hi; ++d) degrees.push_back(d);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("malformed degree item '" + item + "'");
    }
  }
  if (degrees.empty()) throw ParseError("degree list '" + spec + "' selects nothing");
  return degrees;
}

std::array<int, 4> parse_features(const std::string& text) {
  std::array<int, 4> features{};
  std::stringstream items(text);
  std::string item;
  int count = 0;
  while (std::getline(items, item, ',')) {
    if (count >= 4) throw ParseError("expected exactly 4 features");
    try {
      features[static_cast<std::size_t>(count++)] = std::stoi(item);
    } catch (const std::exception&) {
      throw ParseError("malformed feature '" + item + "'");
    }
  }
  if (count != 4) throw ParseError("expected exactly 4 features");
  return features;
}

struct PipelineFlags {
  std::string degrees_spec;
  std::string out_dir;
  std::uint64_t seed = 123;
  double learning_rate = 1e-4;
  int batch_size = 8;
  int max_epochs = 100;
  int patience = 10;
  double validation_fraction = 0.1;
  double test_fraction = 0.2;
  int min_degree = 3;
  bool no_coprime = false;
  int workers = 0;
  int repeats = 5;
};

/// Removes every artifact this run created when a later stage fails.
struct OutputTracker {
  std::vector<fs::path> written;
  bool committed = false;

  void record(const fs::path& p) { written.push_back(p); }
  ~OutputTracker() {
    if (committed) return;
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
};

void run_pipeline(const PipelineFlags& flags) {
  const auto degrees = parse_degree_spec(flags.degrees_spec);
  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);

  ManifestBuilder manifest(
      "pipeline",
      json{{"sg_degrees", flags.degrees_spec},
           {"out", flags.out_dir},
           {"seed", flags.seed},
           {"lr", flags.learning_rate},
           {"batch", flags.batch_size},
           {"epochs", flags.max_epochs},
           {"patience", flags.patience},
           {"val_fraction", flags.validation_fraction},
           {"test_fraction", flags.test_fraction},
           {"min_degree", flags.min_degree},
           {"no_coprime", flags.no_coprime},
           {"workers", flags.workers},
           {"repeats", flags.repeats}});
  OutputTracker tracker;

  auto stage = [](const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw std::runtime_error("stage '" + name + "': " + e.what());
    }
  };

  // dataset generation, one CSV per degree
  BuildOptions options;
  options.filter.min_component_degree = flags.min_degree;
  options.filter.require_coprime_degrees = !flags.no_coprime;
  options.workers = flags.workers;
  std::vector<std::vector<DatasetRow>> parts;
  for (const int degree : degrees) {
    auto rows = stage("dataset", [&] {
      auto built = build_dataset(degree, options);
      if (built.empty()) {
        throw std::runtime_error("sg degree " + std::to_string(degree) +
                                 " admits no polynomial pairs");
      }
      return built;
    });
    const fs::path csv_path = dir / ("uws" + std::to_string(degree) + ".csv");
    const std::string content = csv_string(rows);
    write_text_file(csv_path, content);
    tracker.record(csv_path);
    manifest.add_output(csv_path, content);
    std::cerr << "uws" << degree << ": " << rows.size() << " rows\n";
    parts.push_back(std::move(rows));
  }

  const auto merged = stage("merge", [&] { return merge_datasets(parts); });
  const fs::path merged_path = dir / "merged.csv";
  {
    const std::string content = csv_string(merged);
    write_text_file(merged_path, content);
    tracker.record(merged_path);
    manifest.add_output(merged_path, content);
  }
  std::cerr << "merged: " << merged.size() << " rows\n";

  const auto [train_rows, test_rows] = stage("split", [&] {
    return split(merged, SplitSpec{flags.test_fraction, flags.seed});
  });

  TrainConfig config;
  config.learning_rate = flags.learning_rate;
  config.batch_size = flags.batch_size;
  config.max_epochs = flags.max_epochs;
  config.patience = flags.patience;
  config.validation_fraction = flags.validation_fraction;
  config.seed = flags.seed;

  ScalerParams scaler;
  MlpModel model;
  TrainReport train_report;
  stage("train", [&] {
    scaler = fit_scaler(train_rows);
    const auto scaled = transform(scaler, train_rows);
    Matrix x(static_cast<int>(scaled.size()), kFeatureCount);
    std::vector<double> y(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      for (int c = 0; c < kFeatureCount; ++c) {
        x(static_cast<int>(i), c) = scaled[i][static_cast<std::size_t>(c)];
      }
      y[i] = scaled[i][kLabelColumn];
    }
    model = init_model(kDefaultLayerSizes, flags.seed);
    train_report = train(model, x, y, config);
    return 0;
  });
  std::cerr << "train: stopped at epoch " << train_report.stopped_epoch << ", best epoch "
            << train_report.best_epoch << ", validation mse "
            << train_report.validation_loss[static_cast<std::size_t>(train_report.best_epoch - 1)]
            << "\n";

  const fs::path model_path = dir / "model.json";
  {
    const std::string content =
        model_to_json(ModelFile{model, scaler, flags.seed, config});
    write_text_file(model_path, content);
    tracker.record(model_path);
    manifest.add_output(model_path, content);
  }

  const auto evaluation = stage("evaluate", [&] {
    return evaluate_model(model, scaler, test_rows, train_rows);
  });
  const fs::path eval_path = dir / "evaluation.json";
  {
    const std::string content = evaluation_to_json(evaluation).dump(2) + "\n";
    write_text_file(eval_path, content);
    tracker.record(eval_path);
    manifest.add_output(eval_path, content);
  }
  std::cout << evaluation_text(evaluation);

  const auto importance = stage("importance", [&] {
    return permutation_importance(model, scaler, test_rows, flags.repeats, flags.seed);
  });
  const fs::path importance_path = dir / "importance.json";
  {
    const std::string content = importance_to_json(importance).dump(2) + "\n";
    write_text_file(importance_path, content);
    tracker.record(importance_path);
    manifest.add_output(importance_path, content);
  }
  std::cout << importance_text(importance);

  manifest.write_to(dir / "manifest.json");
  tracker.committed = true;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"shrinking-generator keystream complexity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // poly list
  auto* poly = app.add_subcommand("poly", "primitive polynomial utilities");
  poly->require_subcommand(1);
  auto* poly_list = poly->add_subcommand("list", "enumerate primitive polynomials");
  int poly_degree = 0;
  std::string poly_format = "text";
  poly_list->add_option("--degree", poly_degree, "polynomial degree")->required();
  poly_list->add_option("--format", poly_format, "output format")
      ->check(CLI::IsMember({"text", "mask"}));
  poly_list->callback([&] {
    for (const auto& p : enumerate_primitive(poly_degree)) {
      if (poly_format == "mask") {
        std::ostringstream hex;
        hex << "0x" << std::hex << p.mask;
        std::cout << hex.str() << '\n';
      } else {
        std::cout << format_polynomial(p) << '\n';
      }
    }
  });

  // keystream
  auto* keystream = app.add_subcommand("keystream", "emit shrinking-generator output bits");
  std::string ks_input_poly, ks_control_poly;
  std::string ks_input_seed, ks_control_seed;
  std::uint64_t ks_bits = 0;
  bool ks_full_period = false;
  keystream->add_option("--input-poly", ks_input_poly, "input LFSR feedback polynomial")
      ->required();
  keystream->add_option("--control-poly", ks_control_poly, "control LFSR feedback polynomial")
      ->required();
  keystream->add_option("--input-seed", ks_input_seed, "input LFSR seed (hex, default all ones)");
  keystream->add_option("--control-seed", ks_control_seed,
                        "control LFSR seed (hex, default all ones)");
  auto* bits_opt = keystream->add_option("--bits", ks_bits, "emit exactly this many bits");
  auto* full_opt =
      keystream->add_flag("--full-period", ks_full_period, "emit one full output period");
  bits_opt->excludes(full_opt);
  full_opt->excludes(bits_opt);
  keystream->callback([&] {
    const BinaryPolynomial input_poly = parse_polynomial(ks_input_poly);
    const BinaryPolynomial control_poly = parse_polynomial(ks_control_poly);
    const std::uint64_t input_seed =
        ks_input_seed.empty() ? ~std::uint64_t{0} : parse_hex_seed(ks_input_seed);
    const std::uint64_t control_seed =
        ks_control_seed.empty() ? ~std::uint64_t{0} : parse_hex_seed(ks_control_seed);
    if (bits_opt->count() > 0) {
      if (ks_bits > kDefaultKeystreamBitBudget) {
        throw ResourceError("requested bits exceed the bit budget of " +
                            std::to_string(kDefaultKeystreamBitBudget));
      }
      ShrinkingGenerator generator{Lfsr(input_poly, input_seed),
                                   Lfsr(control_poly, control_seed)};
      std::string out(static_cast<std::size_t>(ks_bits), '0');
      for (char& c : out) c = static_cast<char>('0' + generator.next());
      std::cout << out << '\n';
    } else {
      std::cout << sg_full_period(input_poly, control_poly, input_seed, control_seed) << '\n';
    }
  });

  // uws
  auto* uws_cmd = app.add_subcommand("uws", "unique window size of a bit string");
  std::string uws_bits;
  bool uws_cyclic_mode = false;
  bool uws_witness = false;
  uws_cmd->add_option("bits", uws_bits, "ASCII 0/1 string (reads standard input when omitted)");
  uws_cmd->add_flag("--cyclic", uws_cyclic_mode, "use wraparound windows");
  uws_cmd->add_flag("--witness", uws_witness, "also print a maximal repeated factor");
  uws_cmd->callback([&] {
    const std::string bits = uws_bits.empty() ? read_bits_from_stdin() : uws_bits;
    const UwsResult result = uws_cyclic_mode ? uws_cyclic(bits) : uws_linear(bits);
    std::cout << "uws=" << result.uws << " lrf=" << result.longest_repeated_factor_length;
    if (uws_witness && result.witness) std::cout << " witness=" << *result.witness;
    std::cout << '\n';
  });

  // dataset gen / dataset merge
  auto* dataset = app.add_subcommand("dataset", "dataset generation and maintenance");
  dataset->require_subcommand(1);
  auto* gen = dataset->add_subcommand("gen", "enumerate pairs and label them with UWS");
  int gen_sg_degree = 0;
  int gen_min_degree = 3;
  bool gen_no_coprime = false;
  int gen_workers = 0;
  std::string gen_out;
  gen->add_option("--sg-degree", gen_sg_degree, "sum of the two component degrees")->required();
  gen->add_option("--min-degree", gen_min_degree, "minimum component degree");
  gen->add_flag("--no-coprime", gen_no_coprime, "drop the coprime-degrees filter");
  gen->add_option("--workers", gen_workers, "worker threads (0 = all cores)");
  gen->add_option("--out", gen_out, "output CSV path")->required();
  gen->callback([&] {
    ManifestBuilder manifest("dataset gen", json{{"sg_degree", gen_sg_degree},
                                                 {"min_degree", gen_min_degree},
                                                 {"no_coprime", gen_no_coprime},
                                                 {"workers", gen_workers},
                                                 {"out", gen_out}});
    BuildOptions options;
    options.filter.min_component_degree = gen_min_degree;
    options.filter.require_coprime_degrees = !gen_no_coprime;
    options.workers = gen_workers;
    const auto rows = build_dataset(gen_sg_degree, options);
    const std::string content = csv_string(rows);
    write_text_file(gen_out, content);
    manifest.add_output(gen_out, content);
    manifest.write_beside(gen_out);
    std::cerr << rows.size() << " rows\n";
  });

  auto* merge = dataset->add_subcommand("merge", "concatenate datasets");
  std::vector<std::string> merge_inputs;
  std::string merge_out;
  merge->add_option("files", merge_inputs, "input CSV files")->required()->expected(-1);
  merge->add_option("--out", merge_out, "output CSV path")->required();
  merge->callback([&] {
    ManifestBuilder manifest("dataset merge",
                             json{{"files", merge_inputs}, {"out", merge_out}});
    std::vector<std::vector<DatasetRow>> parts;
    for (const auto& file : merge_inputs) {
      manifest.add_input(file);
      parts.push_back(read_csv(fs::path(file)));
    }
    const auto merged = merge_datasets(parts);
    const std::string content = csv_string(merged);
    write_text_file(merge_out, content);
    manifest.add_output(merge_out, content);
    manifest.write_beside(merge_out);
    std::cerr << merged.size() << " rows\n";
  });

  // train
  auto* train_cmd = app.add_subcommand("train", "fit the regressor on a dataset");
  std::string train_data, train_out;
  TrainConfig train_config;
  train_cmd->add_option("--data", train_data, "training CSV")->required();
  train_cmd->add_option("--lr", train_config.learning_rate, "learning rate");
  train_cmd->add_option("--batch", train_config.batch_size, "mini-batch size");
  train_cmd->add_option("--epochs", train_config.max_epochs, "maximum epochs");
  train_cmd->add_option("--patience", train_config.patience, "early-stopping patience");
  train_cmd->add_option("--val-fraction", train_config.validation_fraction,
                        "held-out validation fraction");
  train_cmd->add_option("--seed", train_config.seed, "initialization and shuffle seed");
  train_cmd->add_option("--out", train_out, "output model path")->required();
  train_cmd->callback([&] {
    ManifestBuilder manifest("train", json{{"data", train_data},
                                           {"lr", train_config.learning_rate},
                                           {"batch", train_config.batch_size},
                                           {"epochs", train_config.max_epochs},
                                           {"patience", train_config.patience},
                                           {"val_fraction", train_config.validation_fraction},
                                           {"seed", train_config.seed},
                                           {"out", train_out}});
    manifest.add_input(train_data);
    const auto rows = read_csv(fs::path(train_data));
    const ScalerParams scaler = fit_scaler(rows);
    const auto scaled = transform(scaler, rows);
    Matrix x(static_cast<int>(scaled.size()), kFeatureCount);
    std::vector<double> y(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      for (int c = 0; c < kFeatureCount; ++c) {
        x(static_cast<int>(i), c) = scaled[i][static_cast<std::size_t>(c)];
      }
      y[i] = scaled[i][kLabelColumn];
    }
    MlpModel model = init_model(kDefaultLayerSizes, train_config.seed);
    const TrainReport report = train(model, x, y, train_config);
    const std::string content =
        model_to_json(ModelFile{model, scaler, train_config.seed, train_config});
    write_text_file(train_out, content);
    manifest.add_output(train_out, content);
    manifest.write_beside(train_out);
    std::cout << "stopped_epoch=" << report.stopped_epoch << " best_epoch=" << report.best_epoch
              << " best_validation_mse="
              << report.validation_loss[static_cast<std::size_t>(report.best_epoch - 1)] << '\n';
  });

  // predict
  auto* predict = app.add_subcommand("predict", "predict UWS from four raw features");
  std::string predict_model, predict_features;
  predict->add_option("--model", predict_model, "model file")->required();
  predict
      ->add_option("--features", predict_features,
                   "input_degree,input_weight,control_degree,control_weight")
      ->required();
  predict->callback([&] {
    const ModelFile file = load_model(predict_model);
    const auto features = parse_features(predict_features);
    std::cout << predict_uws(file.model, file.scaler, features) << '\n';
  });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score a model against a labeled dataset");
  std::string eval_model, eval_data;
  bool eval_json = false;
  evaluate->add_option("--model", eval_model, "model file")->required();
  evaluate->add_option("--data", eval_data, "labeled CSV")->required();
  evaluate->add_flag("--json", eval_json, "emit JSON instead of aligned text");
  evaluate->callback([&] {
    const ModelFile file = load_model(eval_model);
    const auto rows = read_csv(fs::path(eval_data));
    const EvaluationReport report = evaluate_model(file.model, file.scaler, rows, rows);
    if (eval_json) {
      std::cout << evaluation_to_json(report).dump(2) << '\n';
    } else {
      std::cout << evaluation_text(report);
    }
  });

  // importance
  auto* importance = app.add_subcommand("importance", "permutation feature importance");
  std::string imp_model, imp_data;
  int imp_repeats = 5;
  std::uint64_t imp_seed = 0;
  bool imp_json = false;
  importance->add_option("--model", imp_model, "model file")->required();
  importance->add_option("--data", imp_data, "labeled CSV")->required();
  importance->add_option("--repeats", imp_repeats, "shuffles per feature");
  importance->add_option("--seed", imp_seed, "shuffle seed");
  importance->add_flag("--json", imp_json, "emit JSON instead of aligned text");
  importance->callback([&] {
    const ModelFile file = load_model(imp_model);
    const auto rows = read_csv(fs::path(imp_data));
    const ImportanceReport report =
        permutation_importance(file.model, file.scaler, rows, imp_repeats, imp_seed);
    if (imp_json) {
      std::cout << importance_to_json(report).dump(2) << '\n';
    } else {
      std::cout << importance_text(report);
    }
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "generate, merge, split, train, evaluate");
  PipelineFlags flags;
  pipeline->add_option("--sg-degrees", flags.degrees_spec, "degrees, e.g. 8..14 or 8,10,12")
      ->required();
  pipeline->add_option("--out", flags.out_dir, "output directory")->required();
  pipeline->add_option("--seed", flags.seed, "seed for split, init, shuffles");
  pipeline->add_option("--lr", flags.learning_rate, "learning rate");
  pipeline->add_option("--batch", flags.batch_size, "mini-batch size");
  pipeline->add_option("--epochs", flags.max_epochs, "maximum epochs");
  pipeline->add_option("--patience", flags.patience, "early-stopping patience");
  pipeline->add_option("--val-fraction", flags.validation_fraction,
                       "held-out validation fraction");
  pipeline->add_option("--test-fraction", flags.test_fraction, "test split fraction");
  pipeline->add_option("--min-degree", flags.min_degree, "minimum component degree");
  pipeline->add_flag("--no-coprime", flags.no_coprime, "drop the coprime-degrees filter");
  pipeline->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
  pipeline->add_option("--repeats", flags.repeats, "importance shuffles per feature");
  pipeline->callback([&] { run_pipeline(flags); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  static const char* kProgramName = "uwsnn";
  argv.push_back(kProgramName);
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace uwsnn::cli
