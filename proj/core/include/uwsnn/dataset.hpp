#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "uwsnn/generator.hpp"
#include "uwsnn/gf2poly.hpp"

namespace uwsnn {

/// One labeled example: the four structural features of a shrinking-generator
/// polynomial pair and the unique window size of its full keystream period.
struct DatasetRow {
  int input_degree = 0;
  int input_weight = 0;
  int control_degree = 0;
  int control_weight = 0;
  std::int64_t uws = 0;

  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

inline constexpr std::array<const char*, 5> kColumnNames = {
    "input_degree", "input_weight", "control_degree", "control_weight", "uws"};
inline constexpr const char* kCsvHeader =
    "input_degree,input_weight,control_degree,control_weight,uws";
inline constexpr int kFeatureCount = 4;
inline constexpr int kLabelColumn = 4;

struct PairFilter {
  int min_component_degree = 3;
  bool require_coprime_degrees = true;
};

using PolynomialPair = std::pair<BinaryPolynomial, BinaryPolynomial>;

/// All ordered pairs (input, control) of primitive polynomials whose degrees
/// sum to sg_degree and pass the filter, sorted by (input degree, input mask,
/// control mask). No admissible pair yields an empty list.
std::vector<PolynomialPair> enumerate_pairs(int sg_degree, PairFilter filter = {});

/// Features and label for one pair: full-period keystream with all-ones
/// seeds, linear UWS as the label.
DatasetRow dataset_row_for_pair(const PolynomialPair& pair,
                                std::uint64_t bit_budget = kDefaultKeystreamBitBudget);

struct BuildOptions {
  PairFilter filter;
  int workers = 0;  // 0 = hardware concurrency
  std::uint64_t bit_budget = kDefaultKeystreamBitBudget;
};

/// Labels every enumerated pair. Work is distributed over a fixed pool of
/// workers; rows come back in enumeration order no matter the schedule.
std::vector<DatasetRow> build_dataset(int sg_degree, const BuildOptions& options = {});

void write_csv(std::ostream& out, const std::vector<DatasetRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<DatasetRow>& rows);
std::string csv_string(const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> read_csv(std::istream& in);
std::vector<DatasetRow> read_csv(const std::filesystem::path& path);

/// Concatenation preserving per-source order.
std::vector<DatasetRow> merge_datasets(const std::vector<std::vector<DatasetRow>>& parts);

/// Per-column minima and maxima over the five columns, fitted on training
/// rows only. Columns with max == min transform to 0.
struct ScalerParams {
  std::array<double, 5> min{};
  std::array<double, 5> max{};
  bool fitted = false;

  double scale_column(int column, double raw) const;
  double label_min() const { return min[kLabelColumn]; }
  double label_range() const { return max[kLabelColumn] - min[kLabelColumn]; }

  friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

double column_value(const DatasetRow& row, int column);

ScalerParams fit_scaler(const std::vector<DatasetRow>& train_rows);

/// Maps every column of every row through (x - min) / (max - min).
std::vector<std::array<double, 5>> transform(const ScalerParams& params,
                                             const std::vector<DatasetRow>& rows);

/// Recovers a raw label from its scaled value: scaled * range + min.
double inverse_transform_label(const ScalerParams& params, double scaled);

struct SplitSpec {
  double test_fraction = 0.20;
  std::uint64_t seed = 123;
};

/// Round-half-up of (1 - test_fraction) * total.
std::size_t train_size_for(std::size_t total, double test_fraction);

/// Seeded shuffle, then the first train_size_for(...) rows become the
/// training set. Same spec, same split.
std::pair<std::vector<DatasetRow>, std::vector<DatasetRow>> split(
    const std::vector<DatasetRow>& rows, SplitSpec spec = {});

}  // namespace uwsnn
