// malfare: power-mean aggregation, bounded estimation, and group-fair
// training from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "malfare/aggregate.hpp"
#include "malfare/dataset.hpp"
#include "malfare/emm.hpp"
#include "malfare/estimation.hpp"
#include "malfare/inequality.hpp"
#include "malfare/serialize.hpp"
#include "malfare/version.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g_command_line;  // echoed into every report

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty numeric list");
    return out;
}

// "uniform", "freq" (dataset frequencies), or an explicit comma list
std::vector<double> resolve_weights_arg(const std::string& spec, std::size_t groups,
                                        const std::vector<double>* frequencies) {
    if (spec == "uniform") return std::vector<double>(groups, 1.0 / double(groups));
    if (spec == "freq") {
        if (!frequencies) throw UsageError("weights 'freq' needs a dataset");
        return *frequencies;
    }
    std::vector<double> w = parse_double_list(spec);
    if (w.size() != groups)
        throw UsageError("expected " + std::to_string(groups) + " weights, got " +
                         std::to_string(w.size()));
    return w;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    json cfg;
    in >> cfg;
    return cfg;
}

// config file supplies defaults; explicit flags win
template <typename T>
void cfg_override(CLI::App* cmd, const std::string& flag, const json& cfg, const std::string& key,
                  T& var) {
    if (cmd->count(flag) == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

void emit(const json& report, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << human;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct DataArgs {
    std::string data, group_col, target_col, positive = "1";
    std::string weights_spec = "freq";
    double test_fraction = 0.1;
    char delimiter = ',';
    bool bias_weight = false;
};

void add_data_flags(CLI::App* cmd, DataArgs& args) {
    cmd->add_option("--data", args.data, "input CSV path");
    cmd->add_option("--group", args.group_col, "group id column");
    cmd->add_option("--target", args.target_col, "binary target column");
    cmd->add_option("--positive", args.positive, "cell value treated as the positive class");
    cmd->add_option("--weights", args.weights_spec, "uniform | freq | comma list");
    cmd->add_option("--test-frac", args.test_fraction, "held-out fraction, stratified by group");
    cmd->add_flag("--bias-weight", args.bias_weight, "scale each group risk by 1/b_i");
    cmd->add_option("--delimiter", args.delimiter, "CSV delimiter (default ',')");
}

std::pair<malfare::GroupedDataset, malfare::GroupedDataset> load_from_args(const DataArgs& args,
                                                                           std::uint64_t seed) {
    if (args.data.empty()) throw UsageError("--data is required");
    if (args.group_col.empty()) throw UsageError("--group is required");
    if (args.target_col.empty()) throw UsageError("--target is required");
    malfare::CsvOptions options;
    options.target_column = args.target_col;
    options.group_column = args.group_col;
    options.positive_value = args.positive;
    options.delimiter = args.delimiter;
    options.require_class_bias = args.bias_weight;
    return malfare::load_standardized(args.data, options, args.test_fraction, seed);
}

json risks_json(const malfare::GroupedDataset& ds, const std::vector<double>& risks) {
    json out = json::object();
    for (std::size_t i = 0; i < risks.size(); ++i) out[ds.group_names[i]] = risks[i];
    return out;
}

// ---------------------------------------------------------------- eval ----

int cmd_eval(CLI::App* cmd, const json& cfg, bool as_json) {
    static std::string values_s, weights_s = "uniform", p_s, sense_s;
    static bool do_cas = false, unfair = false;
    static double atkinson_eps = std::numeric_limits<double>::quiet_NaN();
    if (cmd->get_options().size() <= 1) {
        cmd->add_option("--values", values_s, "comma list of sentiment values");
        cmd->add_option("--weights", weights_s, "uniform | comma list");
        cmd->add_option("--p", p_s, "power (decimal, inf, -inf)");
        cmd->add_option("--sense", sense_s, "welfare | malfare (enforces the fair range)");
        cmd->add_flag("--cas", do_cas, "also print the additively separable aggregate");
        cmd->add_option("--atkinson", atkinson_eps, "also print the Atkinson index at this eps");
        cmd->add_flag("--unfair", unfair, "drop the fair-range restriction on --sense");
        return 0;
    }
    cfg_override(cmd, "--values", cfg, "values", values_s);
    cfg_override(cmd, "--weights", cfg, "weights", weights_s);
    cfg_override(cmd, "--p", cfg, "p", p_s);
    cfg_override(cmd, "--sense", cfg, "sense", sense_s);
    cfg_override(cmd, "--atkinson", cfg, "atkinson", atkinson_eps);
    if (values_s.empty()) throw UsageError("--values is required");
    if (p_s.empty()) throw UsageError("--p is required");

    const std::vector<double> values = parse_double_list(values_s);
    const std::vector<double> weights = resolve_weights_arg(weights_s, values.size(), nullptr);
    const malfare::Power p = malfare::Power::parse(p_s);
    malfare::SentimentProfile profile(values, weights);

    double value;
    if (sense_s.empty()) {
        value = malfare::power_mean(profile, p);
    } else if (sense_s == "welfare") {
        value = malfare::welfare(profile, {p, malfare::Sense::welfare, !unfair});
    } else if (sense_s == "malfare") {
        value = malfare::malfare(profile, {p, malfare::Sense::malfare, !unfair});
    } else {
        throw UsageError("--sense must be welfare or malfare");
    }

    json results{{"power_mean", value}};
    std::string human = fmt6(value) + "\n";
    if (do_cas) {
        if (!p.is_finite()) throw UsageError("--cas needs a finite p");
        const double cas = malfare::cas_mean(profile, p.finite_value());
        results["cas"] = cas;
        human += "cas " + fmt6(cas) + "\n";
    }
    if (!std::isnan(atkinson_eps)) {
        const malfare::AtkinsonIndex atk = malfare::atkinson_index(profile, atkinson_eps);
        results["atkinson"] = atk.value;
        if (atk.extended_range) results["atkinson_extended_range"] = true;
        human += "atkinson " + fmt6(atk.value) + (atk.extended_range ? " (extended-range)" : "") + "\n";
    }
    json report{{"command", "eval"}, {"argv", g_command_line},
                {"version", malfare::kVersion},
                {"config", {{"values", values_s}, {"weights", weights_s}, {"p", p_s}, {"sense", sense_s}}},
                {"results", results}};
    emit(report, as_json, human);
    return 0;
}

// --------------------------------------------------------------- train ----

int cmd_train(CLI::App* cmd, const json& cfg, bool as_json) {
    static DataArgs data;
    static std::string loss_s = "hinge", p_s = "1", out_path, trace_path;
    static double lambda = 4.0, eps = 0.05;
    static std::uint64_t seed = 0;
    static bool seed_set = false;
    if (cmd->get_options().size() <= 1) {
        add_data_flags(cmd, data);
        cmd->add_option("--loss", loss_s, "hinge | logistic | square");
        cmd->add_option("--p", p_s, "malfare power, >= 1 (decimal or inf)");
        cmd->add_option("--lambda", lambda, "l2-ball radius of theta");
        cmd->add_option("--eps", eps, "target optimality gap");
        cmd->add_option("--seed", seed, "PRNG seed (omitted: drawn from entropy)")
            ->each([](const std::string&) { seed_set = true; });
        cmd->add_option("--out", out_path, "write the model JSON here");
        cmd->add_option("--trace", trace_path, "write the objective trace (JSON lines) here");
        return 0;
    }
    cfg_override(cmd, "--data", cfg, "data", data.data);
    cfg_override(cmd, "--group", cfg, "group", data.group_col);
    cfg_override(cmd, "--target", cfg, "target", data.target_col);
    cfg_override(cmd, "--positive", cfg, "positive", data.positive);
    cfg_override(cmd, "--weights", cfg, "weights", data.weights_spec);
    cfg_override(cmd, "--test-frac", cfg, "test_frac", data.test_fraction);
    cfg_override(cmd, "--loss", cfg, "loss", loss_s);
    cfg_override(cmd, "--p", cfg, "p", p_s);
    cfg_override(cmd, "--lambda", cfg, "lambda", lambda);
    cfg_override(cmd, "--eps", cfg, "eps", eps);
    if (!seed_set && cfg.contains("seed")) {
        seed = cfg.at("seed").get<std::uint64_t>();
        seed_set = true;
    }
    if (cmd->count("--bias-weight") == 0 && cfg.contains("bias_weight"))
        data.bias_weight = cfg.at("bias_weight").get<bool>();
    if (!seed_set) seed = entropy_seed();

    const malfare::LossKind kind = malfare::parse_loss(loss_s);
    if (!malfare::loss_is_convex(kind))
        throw UsageError("train needs a convex loss; zero-one is reporting-only");

    auto [train, test] = load_from_args(data, seed);

    malfare::TrainConfig config;
    config.p = malfare::Power::parse(p_s);
    config.weights = resolve_weights_arg(data.weights_spec, std::size_t(train.groups),
                                         &train.group_weights);
    config.lambda = lambda;
    config.epsilon = eps;
    config.seed = seed;
    config.bias_weighting = data.bias_weight;

    const auto t0 = std::chrono::steady_clock::now();
    malfare::TrainResult result = malfare::train_psg(train, kind, config);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const std::vector<double> train_r =
        malfare::group_risks(result.model, train, kind, data.bias_weight).per_group;
    const double train_malfare =
        malfare::power_mean(malfare::SentimentProfile(train_r, config.weights), config.p);
    std::vector<double> test_r;
    double test_malfare = std::numeric_limits<double>::quiet_NaN();
    if (test.rows > 0) {
        test_r = malfare::group_risks(result.model, test, kind, data.bias_weight).per_group;
        test_malfare =
            malfare::power_mean(malfare::SentimentProfile(test_r, config.weights), config.p);
    }

    const json model_json = malfare::model_to_json(result.model, config.p, config.weights, seed);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << model_json.dump(2) << "\n";
    }
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << malfare::trace_to_jsonl(result.trace);
    }

    json results{{"objective", result.best_objective},
                 {"train_risks", risks_json(train, train_r)},
                 {"train_malfare", train_malfare},
                 {"iterations", result.iterations},
                 {"step_size", result.step_size},
                 {"eps_opt", result.eps_opt}};
    if (!test_r.empty()) {
        results["test_risks"] = risks_json(test, test_r);
        results["test_malfare"] = test_malfare;
    }
    if (out_path.empty()) results["model"] = model_json;

    json report{{"command", "train"}, {"argv", g_command_line},
                {"version", malfare::kVersion},
                {"config",
                 {{"data", data.data}, {"group", data.group_col}, {"target", data.target_col},
                  {"positive", data.positive}, {"loss", loss_s}, {"p", p_s}, {"lambda", lambda},
                  {"eps", eps}, {"weights", data.weights_spec}, {"test_frac", data.test_fraction},
                  {"bias_weight", data.bias_weight}, {"seed", seed}}},
                {"timing_ms", ms},
                {"results", results}};

    std::string human = "trained " + std::string(malfare::loss_name(kind)) + " model, p=" + p_s +
                        ", objective " + fmt6(result.best_objective) + "\n";
    for (int gi = 0; gi < train.groups; ++gi) {
        human += "  " + train.group_names[std::size_t(gi)] + ": train " +
                 fmt6(train_r[std::size_t(gi)]);
        if (!test_r.empty()) human += "  test " + fmt6(test_r[std::size_t(gi)]);
        human += "\n";
    }
    human += "  train malfare " + fmt6(train_malfare);
    if (!test_r.empty()) human += "  test malfare " + fmt6(test_malfare);
    human += "\n";
    emit(report, as_json, human);
    return 0;
}

// --------------------------------------------------------------- sweep ----

int cmd_sweep(CLI::App* cmd, const json& cfg, bool as_json) {
    static DataArgs data;
    static std::string loss_s = "hinge", grid_s = "1,2,4,8,16,32", out_path;
    static double lambda = 4.0, eps = 0.05;
    static std::uint64_t seed = 0;
    static bool seed_set = false;
    if (cmd->get_options().size() <= 1) {
        add_data_flags(cmd, data);
        cmd->add_option("--loss", loss_s, "hinge | logistic | square");
        cmd->add_option("--p-grid", grid_s, "comma list of powers");
        cmd->add_option("--lambda", lambda, "l2-ball radius of theta");
        cmd->add_option("--eps", eps, "target optimality gap per run");
        cmd->add_option("--seed", seed, "PRNG seed")
            ->each([](const std::string&) { seed_set = true; });
        cmd->add_option("--out", out_path, "write the results CSV here (JSON mirror alongside)");
        return 0;
    }
    cfg_override(cmd, "--data", cfg, "data", data.data);
    cfg_override(cmd, "--group", cfg, "group", data.group_col);
    cfg_override(cmd, "--target", cfg, "target", data.target_col);
    cfg_override(cmd, "--positive", cfg, "positive", data.positive);
    cfg_override(cmd, "--weights", cfg, "weights", data.weights_spec);
    cfg_override(cmd, "--test-frac", cfg, "test_frac", data.test_fraction);
    cfg_override(cmd, "--loss", cfg, "loss", loss_s);
    cfg_override(cmd, "--p-grid", cfg, "p_grid", grid_s);
    cfg_override(cmd, "--lambda", cfg, "lambda", lambda);
    cfg_override(cmd, "--eps", cfg, "eps", eps);
    if (!seed_set && cfg.contains("seed")) {
        seed = cfg.at("seed").get<std::uint64_t>();
        seed_set = true;
    }
    if (!seed_set) seed = entropy_seed();

    const malfare::LossKind kind = malfare::parse_loss(loss_s);
    auto [train, test] = load_from_args(data, seed);

    std::vector<malfare::Power> grid;
    {
        std::stringstream ss(grid_s);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(malfare::Power::parse(item));
        if (grid.empty()) throw UsageError("--p-grid is empty");
    }

    malfare::TrainConfig base;
    base.weights = resolve_weights_arg(data.weights_spec, std::size_t(train.groups),
                                       &train.group_weights);
    base.lambda = lambda;
    base.epsilon = eps;
    base.seed = seed;
    base.bias_weighting = data.bias_weight;

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<malfare::SweepRow> rows = malfare::sweep_p(train, test, kind, grid, base);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    // CSV: p, per-group train risk, per-group test risk, train/test malfare
    std::string csv = "p";
    for (const std::string& name : train.group_names) csv += ",train_risk_" + name;
    for (const std::string& name : train.group_names) csv += ",test_risk_" + name;
    csv += ",train_malfare,test_malfare\n";
    json jrows = json::array();
    for (const malfare::SweepRow& row : rows) {
        csv += row.p.str();
        char buf[32];
        auto put = [&](double v) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            csv += ",";
            csv += buf;
        };
        for (double v : row.train_risks) put(v);
        if (row.test_risks.empty())
            for (int gi = 0; gi < train.groups; ++gi) csv += ",nan";
        else
            for (double v : row.test_risks) put(v);
        put(row.train_malfare);
        put(row.test_malfare);
        csv += "\n";
        jrows.push_back(json{{"p", malfare::power_to_json(row.p)},
                             {"train_risks", row.train_risks},
                             {"test_risks", row.test_risks},
                             {"train_malfare", row.train_malfare},
                             {"test_malfare", row.test_malfare},
                             {"eps_opt", row.eps_opt}});
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << csv;
        std::ofstream jout(out_path + ".json");
        jout << jrows.dump(2) << "\n";
    }

    json report{{"command", "sweep"}, {"argv", g_command_line},
                {"version", malfare::kVersion},
                {"config",
                 {{"data", data.data}, {"group", data.group_col}, {"target", data.target_col},
                  {"loss", loss_s}, {"p_grid", grid_s}, {"lambda", lambda}, {"eps", eps},
                  {"weights", data.weights_spec}, {"test_frac", data.test_fraction},
                  {"bias_weight", data.bias_weight}, {"seed", seed}}},
                {"timing_ms", ms},
                {"results", jrows}};
    emit(report, as_json, out_path.empty() ? csv : "wrote " + out_path + "\n");
    return 0;
}

// --------------------------------------------------------------- bound ----

int cmd_bound(CLI::App* cmd, const json& cfg, bool as_json) {
    static std::string method_s = "hoeffding", variances_s, estimates_s, weights_s = "uniform",
                       p_s = "1";
    static double r = 1.0, delta = 0.05;
    static int groups = 1;
    static long long m = 0;
    if (cmd->get_options().size() <= 1) {
        cmd->add_option("--method", method_s, "hoeffding | bennett");
        cmd->add_option("--r", r, "loss range upper bound");
        cmd->add_option("--g", groups, "number of groups");
        cmd->add_option("--delta", delta, "failure probability");
        cmd->add_option("--m", m, "per-group sample count");
        cmd->add_option("--variances", variances_s, "per-group variances (bennett)");
        cmd->add_option("--estimates", estimates_s, "per-group empirical means: adds the bracket");
        cmd->add_option("--weights", weights_s, "uniform | comma list (with --estimates)");
        cmd->add_option("--p", p_s, "malfare power >= 1 (with --estimates)");
        return 0;
    }
    cfg_override(cmd, "--method", cfg, "method", method_s);
    cfg_override(cmd, "--r", cfg, "r", r);
    cfg_override(cmd, "--g", cfg, "g", groups);
    cfg_override(cmd, "--delta", cfg, "delta", delta);
    cfg_override(cmd, "--m", cfg, "m", m);
    cfg_override(cmd, "--variances", cfg, "variances", variances_s);
    cfg_override(cmd, "--estimates", cfg, "estimates", estimates_s);
    cfg_override(cmd, "--weights", cfg, "weights", weights_s);
    cfg_override(cmd, "--p", cfg, "p", p_s);

    if (m < 1) throw UsageError("--m must be >= 1");
    malfare::BoundMethod method;
    if (method_s == "hoeffding")
        method = malfare::BoundMethod::hoeffding;
    else if (method_s == "bennett")
        method = malfare::BoundMethod::bennett;
    else
        throw UsageError("--method must be hoeffding or bennett");
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("--delta must lie in (0,1)");

    std::vector<double> eps;
    if (method == malfare::BoundMethod::hoeffding) {
        eps.assign(std::size_t(groups), malfare::hoeffding_epsilon(r, groups, delta, m));
    } else {
        if (variances_s.empty()) throw UsageError("bennett bound needs --variances");
        eps = malfare::bennett_epsilon(r, groups, delta, m, parse_double_list(variances_s));
    }

    malfare::BoundReport report;
    report.method = method;
    report.delta = delta;
    report.m = m;
    report.r = r;
    report.epsilon_per_group = eps;

    std::string human;
    if (!estimates_s.empty()) {
        const std::vector<double> means = parse_double_list(estimates_s);
        if (means.size() != std::size_t(groups)) throw UsageError("--estimates size != g");
        const std::vector<double> w = resolve_weights_arg(weights_s, means.size(), nullptr);
        const malfare::Power p = malfare::Power::parse(p_s);
        std::vector<double> lo(means.size()), hi(means.size());
        for (std::size_t i = 0; i < means.size(); ++i) {
            lo[i] = std::max(0.0, means[i] - eps[i]);
            hi[i] = means[i] + eps[i];
        }
        const malfare::PowerSpec spec{p, malfare::Sense::malfare, true};
        report.estimate = malfare::malfare(malfare::SentimentProfile(means, w), spec);
        report.lower = malfare::malfare(malfare::SentimentProfile(lo, w), spec);
        report.upper = malfare::malfare(malfare::SentimentProfile(hi, w), spec);
        human += "estimate " + fmt6(report.estimate) + "  bracket [" + fmt6(report.lower) + ", " +
                 fmt6(report.upper) + "]\n";
    }
    human = "epsilon " + fmt6(eps[0]) + (groups > 1 ? " (per group)" : "") + "\n" + human;

    json out{{"command", "bound"}, {"argv", g_command_line},
             {"version", malfare::kVersion},
             {"config",
              {{"method", method_s}, {"r", r}, {"g", groups}, {"delta", delta}, {"m", m},
               {"variances", variances_s}, {"estimates", estimates_s}, {"p", p_s},
               {"weights", weights_s}}},
             {"results", malfare::to_json(report)}};
    emit(out, as_json, human);
    return 0;
}

// ------------------------------------------------------------ hardness ----

int cmd_hardness(CLI::App* cmd, const json& cfg, bool as_json) {
    static double p_bias = 0.0, delta = 0.05, w = 0.0;
    static bool simulate = false;
    static long long m = 0, trials = 100000;
    static std::uint64_t seed = 0;
    static bool seed_set = false;
    if (cmd->get_options().size() <= 1) {
        cmd->add_option("--p-bias", p_bias, "Bernoulli bias of the rare group");
        cmd->add_option("--delta", delta, "failure probability");
        cmd->add_flag("--simulate", simulate, "run the Monte-Carlo all-zero frequency");
        cmd->add_option("--m", m, "sample size for the simulation (default: the bound)");
        cmd->add_option("--trials", trials, "Monte-Carlo trials");
        cmd->add_option("--seed", seed, "PRNG seed")
            ->each([](const std::string&) { seed_set = true; });
        cmd->add_option("--w", w, "weight of the rare group: also report W_0 = p^w");
        return 0;
    }
    cfg_override(cmd, "--p-bias", cfg, "p_bias", p_bias);
    cfg_override(cmd, "--delta", cfg, "delta", delta);
    cfg_override(cmd, "--m", cfg, "m", m);
    cfg_override(cmd, "--trials", cfg, "trials", trials);
    cfg_override(cmd, "--w", cfg, "w", w);
    if (!seed_set && cfg.contains("seed")) {
        seed = cfg.at("seed").get<std::uint64_t>();
        seed_set = true;
    }
    if (!seed_set) seed = entropy_seed();

    const long long bound = malfare::nsw_hardness_bound(p_bias, delta);
    json results{{"m_bound", bound}};
    std::string human = "m >= " + std::to_string(bound) + "\n";
    if (w > 0.0) {
        const double w0 = malfare::nsw_weighted_welfare(p_bias, w);
        results["weighted_nsw"] = w0;
        human += "W_0 = p^w = " + fmt6(w0) + "\n";
    }
    if (simulate) {
        const long long m_used = m > 0 ? m : bound;
        const double freq = malfare::nsw_hardness_simulate(p_bias, m_used, trials, seed);
        results["simulated_m"] = m_used;
        results["trials"] = trials;
        results["all_zero_frequency"] = freq;
        results["expected_frequency"] = std::pow(1.0 - p_bias, double(m_used));
        human += "all-zero frequency " + fmt6(freq) + " over " + std::to_string(trials) +
                 " trials at m=" + std::to_string(m_used) + "\n";
    }
    json report{{"command", "hardness"}, {"argv", g_command_line},
                {"version", malfare::kVersion},
                {"config",
                 {{"p_bias", p_bias}, {"delta", delta}, {"simulate", simulate}, {"m", m},
                  {"trials", trials}, {"w", w}, {"seed", seed}}},
                {"results", results}};
    emit(report, as_json, human);
    return 0;
}

// ----------------------------------------------------------- cover-emm ----

int cmd_cover_emm(CLI::App* cmd, const json& cfg, bool as_json) {
    static DataArgs data;
    static std::string p_s = "1", out_path;
    static double eps = 0.1, delta = 0.05;
    static std::uint64_t seed = 0;
    static bool seed_set = false;
    if (cmd->get_options().size() <= 1) {
        add_data_flags(cmd, data);
        data.test_fraction = 0.0;
        cmd->add_option("--p", p_s, "malfare power >= 1");
        cmd->add_option("--eps", eps, "target gap; sets the cover resolution");
        cmd->add_option("--delta", delta, "failure probability for the sample bound");
        cmd->add_option("--seed", seed, "PRNG seed")
            ->each([](const std::string&) { seed_set = true; });
        cmd->add_option("--out", out_path, "write the stump JSON here");
        return 0;
    }
    cfg_override(cmd, "--data", cfg, "data", data.data);
    cfg_override(cmd, "--group", cfg, "group", data.group_col);
    cfg_override(cmd, "--target", cfg, "target", data.target_col);
    cfg_override(cmd, "--positive", cfg, "positive", data.positive);
    cfg_override(cmd, "--weights", cfg, "weights", data.weights_spec);
    cfg_override(cmd, "--test-frac", cfg, "test_frac", data.test_fraction);
    cfg_override(cmd, "--p", cfg, "p", p_s);
    cfg_override(cmd, "--eps", cfg, "eps", eps);
    cfg_override(cmd, "--delta", cfg, "delta", delta);
    if (!seed_set && cfg.contains("seed")) seed = cfg.at("seed").get<std::uint64_t>();

    auto [train, test] = load_from_args(data, seed);
    (void)test;
    const std::vector<double> w = resolve_weights_arg(data.weights_spec, std::size_t(train.groups),
                                                      &train.group_weights);
    const malfare::Power p = malfare::Power::parse(p_s);
    const malfare::CoverTrainResult result = malfare::train_cover(train, p, w, eps, delta);

    json stump = malfare::stump_to_json(result.best);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << stump.dump(2) << "\n";
    }

    json results{{"stump", stump},
                 {"objective", result.objective},
                 {"group_risks", risks_json(train, result.group_risks)},
                 {"gamma", result.gamma},
                 {"cover_size", result.cover_size},
                 {"union_cover_size", result.union_cover_size},
                 {"m_uc", result.m_uc}};
    json report{{"command", "cover-emm"}, {"argv", g_command_line},
                {"version", malfare::kVersion},
                {"config",
                 {{"data", data.data}, {"group", data.group_col}, {"target", data.target_col},
                  {"p", p_s}, {"eps", eps}, {"delta", delta}, {"weights", data.weights_spec},
                  {"test_frac", data.test_fraction}, {"seed", seed}}},
                {"results", results}};

    std::string human = "stump: feature " + std::to_string(result.best.feature) + " dir " +
                        std::to_string(result.best.direction) + " threshold " +
                        fmt6(result.best.threshold) + "\n" + "objective " + fmt6(result.objective) +
                        "  gamma " + fmt6(result.gamma) + "  cover " +
                        std::to_string(result.cover_size) + " (union " +
                        std::to_string(result.union_cover_size) + ")  m_uc " +
                        std::to_string(result.m_uc) + "\n";
    emit(report, as_json, human);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power-mean welfare/malfare toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --json/--config appear after the subcommand
    bool as_json = false;
    std::string config_path;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--config", config_path, "JSON config file; explicit flags win");

    CLI::App* eval = app.add_subcommand("eval", "evaluate aggregators on a profile");
    CLI::App* train = app.add_subcommand("train", "projected-subgradient malfare training");
    CLI::App* sweep = app.add_subcommand("sweep", "train across a grid of powers");
    CLI::App* bound = app.add_subcommand("bound", "finite-sample epsilon and malfare bracket");
    CLI::App* hardness = app.add_subcommand("hardness", "Nash-welfare estimation hardness");
    CLI::App* cover = app.add_subcommand("cover-emm", "exhaustive stump EMM via cover enumeration");

    // first pass registers flags, second pass (post-parse) executes
    cmd_eval(eval, {}, false);
    cmd_train(train, {}, false);
    cmd_sweep(sweep, {}, false);
    cmd_bound(bound, {}, false);
    cmd_hardness(hardness, {}, false);
    cmd_cover_emm(cover, {}, false);

    for (int i = 0; i < argc; ++i) {
        if (i) g_command_line += ' ';
        g_command_line += argv[i];
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const json cfg = load_config_file(config_path);
        if (eval->parsed()) return cmd_eval(eval, cfg, as_json);
        if (train->parsed()) return cmd_train(train, cfg, as_json);
        if (sweep->parsed()) return cmd_sweep(sweep, cfg, as_json);
        if (bound->parsed()) return cmd_bound(bound, cfg, as_json);
        if (hardness->parsed()) return cmd_hardness(hardness, cfg, as_json);
        if (cover->parsed()) return cmd_cover_emm(cover, cfg, as_json);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
