#include "uwsnn/dataset.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uwsnn/complexity.hpp"
#include "uwsnn/errors.hpp"
#include "uwsnn/rng.hpp"

namespace uwsnn {

namespace {

std::string pair_name(const PolynomialPair& pair) {
  return "(" + format_polynomial(pair.first) + ", " + format_polynomial(pair.second) + ")";
}

template <typename Int>
Int parse_int_field(std::string_view field, std::size_t line_number) {
  Int value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError("line " + std::to_string(line_number) + ": non-integer field '" +
                     std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<PolynomialPair> enumerate_pairs(int sg_degree, PairFilter filter) {
  if (filter.min_component_degree < 2) {
    throw std::domain_error("minimum component degree must be at least 2");
  }
  std::vector<PolynomialPair> pairs;
  for (int input_degree = filter.min_component_degree;
       input_degree <= sg_degree - filter.min_component_degree; ++input_degree) {
    const int control_degree = sg_degree - input_degree;
    if (filter.require_coprime_degrees && std::gcd(input_degree, control_degree) != 1) {
      continue;
    }
    const auto inputs = enumerate_primitive(input_degree);
    const auto controls = enumerate_primitive(control_degree);
    for (const auto& a : inputs) {
      for (const auto& b : controls) {
        pairs.emplace_back(a, b);
      }
    }
  }
  return pairs;
}

DatasetRow dataset_row_for_pair(const PolynomialPair& pair, std::uint64_t bit_budget) {
  const std::string keystream = sg_full_period(pair.first, pair.second, bit_budget);
  const UwsResult result = uws_linear(keystream);
  return DatasetRow{pair.first.degree(), pair.first.weight(), pair.second.degree(),
                    pair.second.weight(), result.uws};
}

std::vector<DatasetRow> build_dataset(int sg_degree, const BuildOptions& options) {
  const auto pairs = enumerate_pairs(sg_degree, options.filter);
  std::vector<DatasetRow> rows(pairs.size());
  if (pairs.empty()) return rows;

  int workers = options.workers > 0
                    ? options.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(pairs.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= pairs.size()) return;
      try {
        rows[i] = dataset_row_for_pair(pairs[i], options.bit_budget);
      } catch (const ResourceError& e) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) {
          first_error = std::make_exception_ptr(
              ResourceError("pair " + pair_name(pairs[i]) + ": " + e.what()));
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) {
          first_error = std::make_exception_ptr(
              std::runtime_error("pair " + pair_name(pairs[i]) + ": " + e.what()));
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<DatasetRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.input_degree << ',' << r.input_weight << ',' << r.control_degree << ','
        << r.control_weight << ',' << r.uws << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<DatasetRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, rows);
  if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_string(const std::vector<DatasetRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::vector<DatasetRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header: '" + line + "'");

  std::vector<DatasetRow> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      throw ParseError("line " + std::to_string(line_number) + ": empty record");
    }
    std::array<std::string_view, 5> fields;
    std::string_view rest = line;
    for (int f = 0; f < 5; ++f) {
      const std::size_t comma = rest.find(',');
      if (f < 4) {
        if (comma == std::string_view::npos) {
          throw ParseError("line " + std::to_string(line_number) + ": expected 5 fields");
        }
        fields[static_cast<std::size_t>(f)] = rest.substr(0, comma);
        rest = rest.substr(comma + 1);
      } else {
        if (comma != std::string_view::npos) {
          throw ParseError("line " + std::to_string(line_number) + ": expected 5 fields");
        }
        fields[static_cast<std::size_t>(f)] = rest;
      }
    }
    DatasetRow row;
    row.input_degree = parse_int_field<int>(fields[0], line_number);
    row.input_weight = parse_int_field<int>(fields[1], line_number);
    row.control_degree = parse_int_field<int>(fields[2], line_number);
    row.control_weight = parse_int_field<int>(fields[3], line_number);
    row.uws = parse_int_field<std::int64_t>(fields[4], line_number);
    rows.push_back(row);
  }
  return rows;
}

std::vector<DatasetRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

std::vector<DatasetRow> merge_datasets(const std::vector<std::vector<DatasetRow>>& parts) {
  std::vector<DatasetRow> merged;
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  merged.reserve(total);
  for (const auto& part : parts) {
    merged.insert(merged.end(), part.begin(), part.end());
  }
  return merged;
}

double column_value(const DatasetRow& row, int column) {
  switch (column) {
    case 0: return static_cast<double>(row.input_degree);
    case 1: return static_cast<double>(row.input_weight);
    case 2: return static_cast<double>(row.control_degree);
    case 3: return static_cast<double>(row.control_weight);
    case 4: return static_cast<double>(row.uws);
    default: throw std::out_of_range("column index must be 0..4");
  }
}

double ScalerParams::scale_column(int column, double raw) const {
  if (!fitted) throw std::domain_error("scaler has not been fitted");
  const auto c = static_cast<std::size_t>(column);
  const double range = max[c] - min[c];
  if (range == 0.0) return 0.0;
  return (raw - min[c]) / range;
}

ScalerParams fit_scaler(const std::vector<DatasetRow>& train_rows) {
  if (train_rows.empty()) throw std::domain_error("cannot fit a scaler on empty data");
  ScalerParams params;
  params.min.fill(std::numeric_limits<double>::infinity());
  params.max.fill(-std::numeric_limits<double>::infinity());
  for (const auto& row : train_rows) {
    for (int c = 0; c < 5; ++c) {
      const double v = column_value(row, c);
      const auto uc = static_cast<std::size_t>(c);
      params.min[uc] = std::min(params.min[uc], v);
      params.max[uc] = std::max(params.max[uc], v);
    }
  }
  params.fitted = true;
  return params;
}

std::vector<std::array<double, 5>> transform(const ScalerParams& params,
                                             const std::vector<DatasetRow>& rows) {
  std::vector<std::array<double, 5>> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < 5; ++c) {
      out[i][static_cast<std::size_t>(c)] = params.scale_column(c, column_value(rows[i], c));
    }
  }
  return out;
}

double inverse_transform_label(const ScalerParams& params, double scaled) {
  if (!params.fitted) throw std::domain_error("scaler has not been fitted");
  return scaled * params.label_range() + params.label_min();
}

std::size_t train_size_for(std::size_t total, double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::domain_error("test fraction must lie in (0, 1)");
  }
  return static_cast<std::size_t>(
      std::llround((1.0 - test_fraction) * static_cast<double>(total)));
}

std::pair<std::vector<DatasetRow>, std::vector<DatasetRow>> split(
    const std::vector<DatasetRow>& rows, SplitSpec spec) {
  if (rows.size() < 2) throw std::domain_error("split needs at least 2 rows");
  const std::size_t train_count = train_size_for(rows.size(), spec.test_fraction);

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(spec.seed);
  deterministic_shuffle(order, rng);

  std::pair<std::vector<DatasetRow>, std::vector<DatasetRow>> out;
  out.first.reserve(train_count);
  out.second.reserve(rows.size() - train_count);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    (i < train_count ? out.first : out.second).push_back(rows[order[i]]);
  }
  return out;
}

}  // namespace uwsnn
