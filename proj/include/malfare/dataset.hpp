#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace malfare {

// Group-structured binary classification data. Row order is preserved from
// the source; per-group row indices are derived once at construction. Treat
// instances as immutable after construction (all transforms return copies).
struct GroupedDataset {
    std::size_t rows = 0;
    std::size_t dim = 0;
    int groups = 0;
    std::vector<double> features;  // rows x dim, row-major
    std::vector<double> labels;    // +-1
    std::vector<int> group_ids;    // [0, groups)
    std::vector<double> group_weights;  // population frequencies w, sums to 1
    std::vector<double> class_bias;     // b_i = fraction with positive label
    std::vector<std::vector<int>> group_rows;
    std::vector<std::string> feature_names;
    std::vector<std::string> group_names;

    const double* row(std::size_t i) const { return features.data() + i * dim; }
};

// Validates shapes and fills in group_rows; weights/bias are computed from
// the rows when not supplied. allow_empty_groups covers test splits where a
// tiny group may not reach the test side.
GroupedDataset make_grouped_dataset(std::vector<double> features, std::size_t dim,
                                    std::vector<double> labels, std::vector<int> group_ids,
                                    int groups,
                                    std::optional<std::vector<double>> group_weights = std::nullopt,
                                    std::optional<std::vector<double>> class_bias = std::nullopt,
                                    bool allow_empty_groups = false);

// Recompute weights (empirical frequencies) and class bias from the rows.
void recompute_group_stats(GroupedDataset& ds);

struct CsvOptions {
    std::string target_column;
    std::string group_column;
    std::string positive_value = "1";
    char delimiter = ',';
    bool encode_categoricals = true;
    // reject groups with no positive labels up front (1/b_i undefined)
    bool require_class_bias = false;
};

// Header required, UTF-8. Cells that all parse as reals form a numeric
// column; anything else is categorical and, when encoding is on, one-hot
// expanded (full encoding, no dropped reference category). No normalization
// happens here; z-scoring is fit on a training split (see fit_zscore).
GroupedDataset load_csv(const std::string& path, const CsvOptions& options);

// Shortest-round-trip numeric formatting: reloading with encoding disabled
// reproduces the feature matrix bit for bit.
void save_csv(const GroupedDataset& ds, const std::string& path, char delimiter = ',');

struct ZScaler {
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<std::size_t> constant_columns;  // sd == 0, mapped to all-zeros
};

ZScaler fit_zscore(const GroupedDataset& train);
GroupedDataset apply_zscore(const GroupedDataset& ds, const ZScaler& scaler);

// Stratified by group, deterministic under seed. Group weights and class
// bias of both halves are inherited from the parent (population statistics,
// not split artifacts). test_fraction 0 yields an empty test set.
std::pair<GroupedDataset, GroupedDataset> split(const GroupedDataset& ds, double test_fraction,
                                                std::uint64_t seed);

// load + split + z-score fit on the training side, applied to both.
std::pair<GroupedDataset, GroupedDataset> load_standardized(const std::string& path,
                                                            const CsvOptions& options,
                                                            double test_fraction,
                                                            std::uint64_t seed);

// Bundled generators:
//   "two-gaussians-2group"  each group separable on its own, jointly not
//   "jointly-separable"     one margin-separated concept shared by all groups
//   "conflict-1d"           60/40 groups with identical features, opposite labels
//   "hetero-5group"         five groups, rotated concepts + rising label noise
GroupedDataset make_synthetic(const std::string& name, std::size_t rows, std::uint64_t seed);

}  // namespace malfare
