#include "malfare/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "malfare/rng.hpp"

namespace malfare {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    std::string out = s.substr(a, b - a + 1);
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
        out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

GroupedDataset make_grouped_dataset(std::vector<double> features, std::size_t dim,
                                    std::vector<double> labels, std::vector<int> group_ids,
                                    int groups, std::optional<std::vector<double>> group_weights,
                                    std::optional<std::vector<double>> class_bias,
                                    bool allow_empty_groups) {
    GroupedDataset ds;
    ds.dim = dim;
    ds.groups = groups;
    if (groups < 1) throw std::invalid_argument("dataset: needs at least one group");
    if (dim == 0) throw std::invalid_argument("dataset: needs at least one feature");
    if (features.size() % dim != 0) throw std::invalid_argument("dataset: feature buffer / dim mismatch");
    ds.rows = features.size() / dim;
    if (labels.size() != ds.rows || group_ids.size() != ds.rows)
        throw std::invalid_argument("dataset: labels/groups length mismatch");
    for (double y : labels)
        if (y != 1.0 && y != -1.0) throw std::invalid_argument("dataset: labels must be +-1");
    for (int gid : group_ids)
        if (gid < 0 || gid >= groups) throw std::invalid_argument("dataset: group id out of range");

    ds.features = std::move(features);
    ds.labels = std::move(labels);
    ds.group_ids = std::move(group_ids);
    ds.group_rows.assign(std::size_t(groups), {});
    for (std::size_t i = 0; i < ds.rows; ++i)
        ds.group_rows[std::size_t(ds.group_ids[i])].push_back(int(i));
    if (!allow_empty_groups)
        for (int gi = 0; gi < groups; ++gi)
            if (ds.group_rows[std::size_t(gi)].empty())
                throw std::invalid_argument("dataset: group " + std::to_string(gi) + " is empty");

    if (group_weights) {
        if (group_weights->size() != std::size_t(groups))
            throw std::invalid_argument("dataset: group_weights size mismatch");
        ds.group_weights = std::move(*group_weights);
    }
    if (class_bias) {
        if (class_bias->size() != std::size_t(groups))
            throw std::invalid_argument("dataset: class_bias size mismatch");
        ds.class_bias = std::move(*class_bias);
    }
    if (ds.group_weights.empty() || ds.class_bias.empty()) {
        std::vector<double> keep_w = ds.group_weights, keep_b = ds.class_bias;
        recompute_group_stats(ds);
        if (!keep_w.empty()) ds.group_weights = keep_w;
        if (!keep_b.empty()) ds.class_bias = keep_b;
    }

    ds.feature_names.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) ds.feature_names[j] = "x" + std::to_string(j);
    ds.group_names.resize(std::size_t(groups));
    for (int gi = 0; gi < groups; ++gi) ds.group_names[std::size_t(gi)] = "g" + std::to_string(gi);
    return ds;
}

void recompute_group_stats(GroupedDataset& ds) {
    ds.group_weights.assign(std::size_t(ds.groups), 0.0);
    ds.class_bias.assign(std::size_t(ds.groups), 0.0);
    if (ds.rows == 0) return;
    for (int gi = 0; gi < ds.groups; ++gi) {
        const std::vector<int>& rows = ds.group_rows[std::size_t(gi)];
        ds.group_weights[std::size_t(gi)] = double(rows.size()) / double(ds.rows);
        if (rows.empty()) continue;
        std::size_t positives = 0;
        for (int r : rows)
            if (ds.labels[std::size_t(r)] > 0.0) ++positives;
        ds.class_bias[std::size_t(gi)] = double(positives) / double(rows.size());
    }
}

GroupedDataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file");
    const std::vector<std::string> header = split_line(line, options.delimiter);

    long target_col = -1, group_col = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == options.target_column) target_col = long(j);
        if (header[j] == options.group_column) group_col = long(j);
    }
    if (target_col < 0) throw std::runtime_error("load_csv: missing target column '" + options.target_column + "'");
    if (group_col < 0) throw std::runtime_error("load_csv: missing group column '" + options.group_column + "'");
    if (target_col == group_col) throw std::runtime_error("load_csv: target and group columns coincide");

    std::vector<std::vector<std::string>> table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line, options.delimiter);
        if (cells.size() != header.size())
            throw std::runtime_error("load_csv: row with " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(header.size()));
        table.push_back(std::move(cells));
    }
    if (table.empty()) throw std::runtime_error("load_csv: no data rows");
    const std::size_t n = table.size();

    // column typing: numeric iff every cell parses fully as a real
    std::vector<std::size_t> feature_cols;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (long(j) != target_col && long(j) != group_col) feature_cols.push_back(j);

    std::vector<bool> numeric(header.size(), false);
    for (std::size_t j : feature_cols) {
        bool ok = true;
        double tmp;
        for (std::size_t i = 0; i < n && ok; ++i) ok = parse_double(table[i][j], tmp);
        numeric[j] = ok;
    }

    std::vector<std::string> feature_names;
    // (column, category) pairs in encoded order; category empty for numeric
    std::vector<std::pair<std::size_t, std::string>> layout;
    for (std::size_t j : feature_cols) {
        if (numeric[j]) {
            layout.emplace_back(j, "");
            feature_names.push_back(header[j]);
        } else {
            if (!options.encode_categoricals)
                throw std::runtime_error("load_csv: column '" + header[j] +
                                         "' is not numeric and encoding is disabled");
            std::map<std::string, int> cats;
            for (std::size_t i = 0; i < n; ++i) cats.emplace(table[i][j], 0);
            for (const auto& [cat, unused] : cats) {
                (void)unused;
                layout.emplace_back(j, cat);
                feature_names.push_back(header[j] + "=" + cat);
            }
        }
    }
    const std::size_t dim = layout.size();
    if (dim == 0) throw std::runtime_error("load_csv: no feature columns");

    // group mapping in sorted order
    std::map<std::string, int> group_map;
    for (std::size_t i = 0; i < n; ++i) group_map.emplace(table[i][std::size_t(group_col)], 0);
    int next_id = 0;
    for (auto& [name, id] : group_map) id = next_id++;

    std::vector<double> features(n * dim, 0.0);
    std::vector<double> labels(n);
    std::vector<int> group_ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& [col, cat] = layout[k];
            if (cat.empty()) {
                double v;
                parse_double(table[i][col], v);
                features[i * dim + k] = v;
            } else {
                features[i * dim + k] = table[i][col] == cat ? 1.0 : 0.0;
            }
        }
        labels[i] = table[i][std::size_t(target_col)] == options.positive_value ? 1.0 : -1.0;
        group_ids[i] = group_map.at(table[i][std::size_t(group_col)]);
    }

    GroupedDataset ds = make_grouped_dataset(std::move(features), dim, std::move(labels),
                                             std::move(group_ids), next_id);
    ds.feature_names = std::move(feature_names);
    ds.group_names.clear();
    for (const auto& [name, id] : group_map) {
        (void)id;
        ds.group_names.push_back(name);
    }
    if (options.require_class_bias)
        for (int gi = 0; gi < ds.groups; ++gi)
            if (ds.class_bias[std::size_t(gi)] <= 0.0)
                throw std::runtime_error("load_csv: group '" + ds.group_names[std::size_t(gi)] +
                                         "' has no positive labels; 1/b is undefined");
    return ds;
}

void save_csv(const GroupedDataset& ds, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open '" + path + "'");
    for (std::size_t j = 0; j < ds.dim; ++j) out << ds.feature_names[j] << delimiter;
    out << "_target" << delimiter << "_group\n";
    for (std::size_t i = 0; i < ds.rows; ++i) {
        for (std::size_t j = 0; j < ds.dim; ++j) out << format_double(ds.features[i * ds.dim + j]) << delimiter;
        out << (ds.labels[i] > 0.0 ? "1" : "-1") << delimiter
            << ds.group_names[std::size_t(ds.group_ids[i])] << "\n";
    }
}

ZScaler fit_zscore(const GroupedDataset& train) {
    if (train.rows == 0) throw std::invalid_argument("fit_zscore: empty dataset");
    ZScaler scaler;
    scaler.mean.assign(train.dim, 0.0);
    scaler.sd.assign(train.dim, 0.0);
    for (std::size_t i = 0; i < train.rows; ++i)
        for (std::size_t j = 0; j < train.dim; ++j) scaler.mean[j] += train.features[i * train.dim + j];
    for (std::size_t j = 0; j < train.dim; ++j) scaler.mean[j] /= double(train.rows);
    for (std::size_t i = 0; i < train.rows; ++i)
        for (std::size_t j = 0; j < train.dim; ++j) {
            const double d = train.features[i * train.dim + j] - scaler.mean[j];
            scaler.sd[j] += d * d;
        }
    for (std::size_t j = 0; j < train.dim; ++j) {
        scaler.sd[j] = std::sqrt(scaler.sd[j] / double(train.rows));
        if (scaler.sd[j] == 0.0) scaler.constant_columns.push_back(j);
    }
    return scaler;
}

GroupedDataset apply_zscore(const GroupedDataset& ds, const ZScaler& scaler) {
    if (scaler.mean.size() != ds.dim) throw std::invalid_argument("apply_zscore: dim mismatch");
    GroupedDataset out = ds;
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.dim; ++j) {
            double& v = out.features[i * out.dim + j];
            v = scaler.sd[j] == 0.0 ? 0.0 : (v - scaler.mean[j]) / scaler.sd[j];
        }
    return out;
}

std::pair<GroupedDataset, GroupedDataset> split(const GroupedDataset& ds, double test_fraction,
                                                std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split: test_fraction must lie in [0,1)");

    std::vector<bool> in_test(ds.rows, false);
    if (test_fraction > 0.0) {
        for (int gi = 0; gi < ds.groups; ++gi) {
            std::vector<int> rows = ds.group_rows[std::size_t(gi)];
            Rng rng(mix_seed(seed, std::uint64_t(gi)));
            rng.shuffle(rows);
            const long long mg = (long long)rows.size();
            long long k = (long long)std::llround(test_fraction * double(mg));
            k = std::max(1LL, std::min(k, mg - 1));
            for (long long t = 0; t < k; ++t) in_test[std::size_t(rows[std::size_t(t)])] = true;
        }
    }

    auto build = [&](bool take_test) {
        std::vector<double> features;
        std::vector<double> labels;
        std::vector<int> gids;
        for (std::size_t i = 0; i < ds.rows; ++i) {
            if (in_test[i] != take_test) continue;
            features.insert(features.end(), ds.row(i), ds.row(i) + ds.dim);
            labels.push_back(ds.labels[i]);
            gids.push_back(ds.group_ids[i]);
        }
        GroupedDataset part;
        if (labels.empty()) {
            part.dim = ds.dim;
            part.groups = ds.groups;
            part.group_rows.assign(std::size_t(ds.groups), {});
        } else {
            part = make_grouped_dataset(std::move(features), ds.dim, std::move(labels),
                                        std::move(gids), ds.groups, std::nullopt, std::nullopt,
                                        /*allow_empty_groups=*/true);
        }
        // population statistics come from the full data, not the split
        part.group_weights = ds.group_weights;
        part.class_bias = ds.class_bias;
        part.feature_names = ds.feature_names;
        part.group_names = ds.group_names;
        return part;
    };
    return {build(false), build(true)};
}

std::pair<GroupedDataset, GroupedDataset> load_standardized(const std::string& path,
                                                            const CsvOptions& options,
                                                            double test_fraction,
                                                            std::uint64_t seed) {
    GroupedDataset raw = load_csv(path, options);
    auto [train, test] = split(raw, test_fraction, seed);
    ZScaler scaler = fit_zscore(train);
    GroupedDataset train_z = apply_zscore(train, scaler);
    GroupedDataset test_z = test.rows == 0 ? test : apply_zscore(test, scaler);
    return {std::move(train_z), std::move(test_z)};
}

namespace {

// offset with norm <= cap, isotropic normal before truncation
void truncated_gauss_2d(Rng& rng, double sigma, double cap, double& dx, double& dy) {
    do {
        dx = sigma * rng.normal();
        dy = sigma * rng.normal();
    } while (dx * dx + dy * dy > cap * cap);
}

GroupedDataset gen_two_gaussians(std::size_t rows, std::uint64_t seed) {
    const double mu_x = 1.0, mu_y = 0.5, sigma = 0.3, cap = 2.5 * 0.3;
    Rng rng(seed);
    std::vector<double> features;
    std::vector<double> labels;
    std::vector<int> gids;
    for (std::size_t i = 0; i < rows; ++i) {
        const int g = i < rows / 2 ? 0 : 1;
        const double y = (i % 2 == 0) ? 1.0 : -1.0;
        // group 1 sees the mirrored concept: labels flip across the same clouds
        const double side = g == 0 ? y : -y;
        double dx, dy;
        truncated_gauss_2d(rng, sigma, cap, dx, dy);
        features.push_back(side * mu_x + dx);
        features.push_back(side * mu_y + dy);
        labels.push_back(y);
        gids.push_back(g);
    }
    return make_grouped_dataset(std::move(features), 2, std::move(labels), std::move(gids), 2);
}

GroupedDataset gen_jointly_separable(std::size_t rows, std::uint64_t seed) {
    const double tx = 1.0 / std::sqrt(1.25), ty = 0.5 / std::sqrt(1.25);  // unit concept
    Rng rng(seed);
    std::vector<double> features;
    std::vector<double> labels;
    std::vector<int> gids;
    for (std::size_t i = 0; i < rows; ++i) {
        double x0, x1, margin;
        do {
            x0 = rng.normal();
            x1 = rng.normal();
            margin = tx * x0 + ty * x1;
        } while (x0 * x0 + x1 * x1 > 9.0 || std::abs(margin) < 0.5);
        features.push_back(x0);
        features.push_back(x1);
        labels.push_back(margin > 0.0 ? 1.0 : -1.0);
        gids.push_back(int(i % 2));
    }
    return make_grouped_dataset(std::move(features), 2, std::move(labels), std::move(gids), 2);
}

GroupedDataset gen_conflict_1d(std::size_t rows, std::uint64_t seed) {
    // Pure label conflict over one shared input distribution: group A always
    // wants +1, group B always wants -1, at a 60/40 weighting. Features sit
    // on per-group quantile grids so each group's empirical CDF tracks the
    // common law exactly; with independent draws a lucky fluctuation could
    // hand an interior stump a lower weighted risk than the one-sided
    // optimum, which is not the scenario this task encodes.
    const std::size_t count_a = (rows * 6) / 10;
    const std::size_t count_b = rows - count_a;
    std::vector<std::size_t> order(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<double> features(rows);
    std::vector<double> labels(rows);
    std::vector<int> gids(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        const std::size_t slot = order[k];
        const bool group_a = slot < count_a;
        const double position =
            group_a ? (double(slot) + 0.5) / double(count_a)
                    : (double(slot - count_a) + 0.5) / double(count_b);
        features[k] = position;
        labels[k] = group_a ? 1.0 : -1.0;
        gids[k] = group_a ? 0 : 1;
    }
    return make_grouped_dataset(std::move(features), 1, std::move(labels), std::move(gids), 2);
}

GroupedDataset gen_hetero_5group(std::size_t rows, std::uint64_t seed) {
    const double share[5] = {0.35, 0.25, 0.20, 0.12, 0.08};
    const double angle_deg[5] = {-36.0, -18.0, 0.0, 18.0, 36.0};
    const double noise[5] = {0.0, 0.02, 0.04, 0.06, 0.08};
    const double pi = 3.14159265358979323846;

    Rng rng(seed);
    std::vector<double> features;
    std::vector<double> labels;
    std::vector<int> gids;
    std::size_t emitted = 0;
    for (int g = 0; g < 5; ++g) {
        std::size_t count = g == 4 ? rows - emitted : std::size_t(std::llround(share[g] * double(rows)));
        emitted += count;
        const double a = (90.0 + angle_deg[g]) * pi / 180.0;
        const double tx = std::cos(a), ty = std::sin(a);
        for (std::size_t i = 0; i < count; ++i) {
            double x0, x1, margin;
            do {
                x0 = rng.normal();
                x1 = rng.normal();
                margin = tx * x0 + ty * x1;
            } while (x0 * x0 + x1 * x1 > 9.0 || std::abs(margin) < 0.3);
            double y = margin > 0.0 ? 1.0 : -1.0;
            if (rng.uniform() < noise[g]) y = -y;
            features.push_back(x0);
            features.push_back(x1);
            labels.push_back(y);
            gids.push_back(g);
        }
    }
    return make_grouped_dataset(std::move(features), 2, std::move(labels), std::move(gids), 5);
}

}  // namespace

GroupedDataset make_synthetic(const std::string& name, std::size_t rows, std::uint64_t seed) {
    if (rows < 10) throw std::invalid_argument("make_synthetic: needs at least 10 rows");
    if (name == "two-gaussians-2group") return gen_two_gaussians(rows, seed);
    if (name == "jointly-separable") return gen_jointly_separable(rows, seed);
    if (name == "conflict-1d") return gen_conflict_1d(rows, seed);
    if (name == "hetero-5group") return gen_hetero_5group(rows, seed);
    throw std::invalid_argument("make_synthetic: unknown generator '" + name + "'");
}

}  // namespace malfare
