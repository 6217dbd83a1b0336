#include "malfare/emm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "malfare/aggregate.hpp"
#include "malfare/estimation.hpp"
#include "malfare/kernels.hpp"

namespace malfare {
namespace {

std::vector<double> resolve_weights(const GroupedDataset& ds, const std::vector<double>& weights) {
    if (weights.empty()) return ds.group_weights;
    if (weights.size() != std::size_t(ds.groups))
        throw std::invalid_argument("emm: weights size does not match group count");
    return weights;
}

void require_fair_malfare(Power p) {
    if (!(p >= 1.0)) throw std::invalid_argument("emm: fair malfare requires p >= 1");
}

// Group-major contiguous copies of the data; the training loop runs entirely
// on these buffers.
struct Workspace {
    std::size_t dim = 0;
    int groups = 0;
    std::vector<std::vector<double>> x;  // m_i x dim
    std::vector<std::vector<double>> y;
    std::vector<double> bias_factor;  // 1/b_i or 1
    std::vector<double> weights;

    // scratch reused across iterations
    std::vector<std::vector<double>> margins;
    std::vector<std::vector<double>> group_grad;
    std::vector<double> risks;

    Workspace(const GroupedDataset& ds, const std::vector<double>& w, bool bias) {
        dim = ds.dim;
        groups = ds.groups;
        weights = resolve_weights(ds, w);
        x.resize(std::size_t(groups));
        y.resize(std::size_t(groups));
        margins.resize(std::size_t(groups));
        group_grad.assign(std::size_t(groups), std::vector<double>(dim, 0.0));
        bias_factor.assign(std::size_t(groups), 1.0);
        risks.assign(std::size_t(groups), 0.0);
        for (int gi = 0; gi < groups; ++gi) {
            const std::vector<int>& rows = ds.group_rows[std::size_t(gi)];
            if (rows.empty())
                throw std::invalid_argument("emm: group " + std::to_string(gi) + " is empty");
            x[std::size_t(gi)].reserve(rows.size() * dim);
            for (int r : rows) {
                const double* src = ds.row(std::size_t(r));
                x[std::size_t(gi)].insert(x[std::size_t(gi)].end(), src, src + dim);
                y[std::size_t(gi)].push_back(ds.labels[std::size_t(r)]);
            }
            margins[std::size_t(gi)].resize(rows.size());
            if (bias) {
                const double b = ds.class_bias[std::size_t(gi)];
                if (!(b > 0.0))
                    throw std::invalid_argument("emm: class bias 0 in group " + std::to_string(gi));
                bias_factor[std::size_t(gi)] = 1.0 / b;
            }
        }
    }

    std::size_t group_size(int gi) const { return y[std::size_t(gi)].size(); }

    void compute_risks(std::span<const double> theta, LossKind kind) {
        for (int gi = 0; gi < groups; ++gi) {
            const std::size_t m = group_size(gi);
            const double* xs = x[std::size_t(gi)].data();
            double* ms = margins[std::size_t(gi)].data();
            for (std::size_t k = 0; k < m; ++k) ms[k] = kern::dot(xs + k * dim, theta.data(), dim);
            const double* ys = y[std::size_t(gi)].data();
            double loss_sum = 0.0;
            switch (kind) {
                case LossKind::hinge: loss_sum = kern::hinge_loss_sum(ms, ys, m); break;
                case LossKind::logistic_ce: loss_sum = kern::logistic_loss_sum(ms, ys, m); break;
                case LossKind::zero_one: loss_sum = kern::zero_one_loss_sum(ms, ys, m); break;
                case LossKind::square: loss_sum = kern::square_loss_sum(ms, ys, m); break;
            }
            risks[std::size_t(gi)] = bias_factor[std::size_t(gi)] * loss_sum / double(m);
        }
    }

    // risk subgradients dR_i; requires compute_risks first (uses margins)
    void compute_group_grads(LossKind kind) {
        for (int gi = 0; gi < groups; ++gi) {
            const std::size_t m = group_size(gi);
            const double* xs = x[std::size_t(gi)].data();
            const double* ms = margins[std::size_t(gi)].data();
            const double* ys = y[std::size_t(gi)].data();
            std::vector<double>& grad = group_grad[std::size_t(gi)];
            std::fill(grad.begin(), grad.end(), 0.0);
            const double scale = bias_factor[std::size_t(gi)] / double(m);
            for (std::size_t k = 0; k < m; ++k) {
                const double c = loss_dvalue(kind, ys[k], ms[k]);
                if (c != 0.0) kern::axpy(scale * c, xs + k * dim, grad.data(), dim);
            }
        }
    }

    double aggregate(Power p) const {
        SentimentProfile profile(risks, weights);
        return power_mean(profile, p);
    }

    // chain weights of the malfare objective at the current risks
    std::vector<double> chain_weights(Power p, double value) const {
        std::vector<double> c(weights.size(), 0.0);
        if (p.is_pos_inf()) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < risks.size(); ++i)
                if (risks[i] > risks[best]) best = i;  // strict: lowest index wins ties
            c[best] = 1.0;
            return c;
        }
        const double pf = p.finite_value();
        if (pf == 1.0 || value == 0.0) {
            // p = 1 chain; also the fallback on an all-zero risk profile
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = weights[i];
            return c;
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double ratio = std::max(risks[i], 1e-12) / value;
            c[i] = weights[i] * std::pow(ratio, pf - 1.0);
        }
        return c;
    }

    double value_and_subgradient(std::span<const double> theta, LossKind kind, Power p,
                                 std::vector<double>& grad_out) {
        compute_risks(theta, kind);
        const double value = aggregate(p);
        compute_group_grads(kind);
        const std::vector<double> c = chain_weights(p, value);
        std::fill(grad_out.begin(), grad_out.end(), 0.0);
        for (int gi = 0; gi < groups; ++gi)
            if (c[std::size_t(gi)] != 0.0)
                kern::axpy(c[std::size_t(gi)], group_grad[std::size_t(gi)].data(), grad_out.data(), dim);
        return value;
    }

    double value(std::span<const double> theta, LossKind kind, Power p) {
        compute_risks(theta, kind);
        return aggregate(p);
    }
};

}  // namespace

double emm_objective(std::span<const double> theta, const GroupedDataset& ds, LossKind kind,
                     Power p, const std::vector<double>& weights, bool bias_weighting) {
    require_fair_malfare(p);
    Workspace ws(ds, weights, bias_weighting);
    return ws.value(theta, kind, p);
}

std::vector<double> emm_subgradient(std::span<const double> theta, const GroupedDataset& ds,
                                    LossKind kind, Power p, const std::vector<double>& weights,
                                    bool bias_weighting) {
    require_fair_malfare(p);
    if (!loss_is_convex(kind))
        throw std::invalid_argument("emm_subgradient: loss must be convex");
    Workspace ws(ds, weights, bias_weighting);
    std::vector<double> grad(ds.dim, 0.0);
    ws.value_and_subgradient(theta, kind, p, grad);
    return grad;
}

TrainResult train_psg(const GroupedDataset& ds, LossKind kind, const TrainConfig& config) {
    if (!loss_is_convex(kind))
        throw std::invalid_argument("train_psg: loss must be convex (zero-one is reporting-only)");
    require_fair_malfare(config.p);
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("train_psg: epsilon must be > 0");
    if (!(config.lambda > 0.0)) throw std::invalid_argument("train_psg: lambda must be > 0");
    if (!(config.lambda_ell > 0.0)) throw std::invalid_argument("train_psg: lambda_ell must be > 0");

    Workspace ws(ds, config.weights, config.bias_weighting);

    const double lambda_h = config.lambda_h > 0.0 ? config.lambda_h : max_row_norm(ds);
    if (!(lambda_h > 0.0)) throw std::invalid_argument("train_psg: lambda_h resolved to 0");
    const double diam = config.diam > 0.0 ? config.diam : 2.0 * config.lambda;

    const double n_raw = std::ceil(std::pow(3.0 * diam * config.lambda_ell * lambda_h / config.epsilon, 2.0));
    if (!(n_raw >= 1.0) || n_raw > double(config.max_iterations))
        throw std::runtime_error(
            "train_psg: iteration count " + std::to_string(n_raw) + " exceeds the cap of " +
            std::to_string(config.max_iterations) + "; increase epsilon or raise max_iterations");
    const long long n = (long long)n_raw;
    const double alpha = diam / (config.lambda_ell * lambda_h * std::sqrt(double(n)));

    std::vector<double> theta;
    if (config.theta0.empty()) {
        theta.assign(ds.dim, 0.0);
    } else {
        if (config.theta0.size() != ds.dim)
            throw std::invalid_argument("train_psg: theta0 dimension mismatch");
        theta = config.theta0;
        if (l2_norm(theta) > config.lambda * (1.0 + 1e-9))
            throw std::invalid_argument("train_psg: theta0 lies outside the constraint ball");
    }

    const long long stride =
        std::max(1LL, (long long)std::ceil(double(n + 1) / double(std::max<std::size_t>(1, config.trace_max_points))));

    TrainResult result;
    result.iterations = n;
    result.step_size = alpha;
    result.eps_opt = diam * config.lambda_ell * lambda_h / std::sqrt(double(n));
    result.lambda_ell = config.lambda_ell;
    result.lambda_h = lambda_h;
    result.diam = diam;
    result.seed = config.seed;

    std::vector<double> grad(ds.dim, 0.0);
    std::vector<double> best_theta = theta;
    double best_value = std::numeric_limits<double>::infinity();

    for (long long t = 0; t <= n; ++t) {
        double value;
        if (config.finite_difference_subgradient && t < n) {
            value = ws.value(theta, kind, config.p);
            for (std::size_t j = 0; j < ds.dim; ++j) {
                const double keep = theta[j];
                theta[j] = keep + config.fd_step;
                grad[j] = (ws.value(theta, kind, config.p) - value) / config.fd_step;
                theta[j] = keep;
            }
        } else {
            value = ws.value_and_subgradient(theta, kind, config.p, grad);
        }
        if (value < best_value) {
            best_value = value;
            best_theta = theta;
        }
        if (t % stride == 0 || t == n)
            result.trace.push_back(TracePoint{t, value, alpha});
        if (t == n) break;
        kern::axpy(-alpha, grad.data(), theta.data(), ds.dim);
        theta = project_l2_ball(std::move(theta), config.lambda);
    }

    result.best_objective = best_value;
    result.model = LinearModel{std::move(best_theta), config.lambda, kind};
    return result;
}

StumpCover enumerate_stump_cover(const GroupedDataset& ds, double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("enumerate_stump_cover: gamma must be >= 0");
    StumpCover cover;
    cover.gamma = gamma;
    for (std::size_t j = 0; j < ds.dim; ++j) {
        std::vector<double> vals;
        vals.reserve(ds.rows);
        for (std::size_t i = 0; i < ds.rows; ++i) vals.push_back(ds.features[i * ds.dim + j]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

        std::vector<double> thresholds;
        if (vals.size() == 1) {
            // constant column: only the two constant predictors remain
            thresholds.push_back(vals[0] + 1.0);
        } else {
            thresholds.push_back(vals.front() - 1.0);
            for (std::size_t k = 0; k + 1 < vals.size(); ++k)
                thresholds.push_back(0.5 * (vals[k] + vals[k + 1]));
            thresholds.push_back(vals.back() + 1.0);
        }
        for (double t : thresholds)
            for (int dir : {+1, -1}) cover.stumps.push_back(Stump{int(j), dir, t});
    }
    if (cover.stumps.empty()) throw std::logic_error("enumerate_stump_cover: empty cover");
    return cover;
}

namespace {

std::vector<double> stump_group_risks(const Stump& stump, const GroupedDataset& ds) {
    std::vector<double> risks(std::size_t(ds.groups), 0.0);
    for (int gi = 0; gi < ds.groups; ++gi) {
        const std::vector<int>& rows = ds.group_rows[std::size_t(gi)];
        std::size_t miss = 0;
        for (int r : rows) {
            const double pred = stump.predict(ds.row(std::size_t(r)));
            if (ds.labels[std::size_t(r)] * pred <= 0.0) ++miss;
        }
        risks[std::size_t(gi)] = double(miss) / double(rows.size());
    }
    return risks;
}

std::size_t union_of_group_covers_size(const GroupedDataset& ds) {
    std::set<std::tuple<int, int, double>> pool;
    for (int gi = 0; gi < ds.groups; ++gi) {
        const std::vector<int>& rows = ds.group_rows[std::size_t(gi)];
        std::vector<double> features(rows.size() * ds.dim);
        std::vector<double> labels(rows.size());
        std::vector<int> gids(rows.size(), 0);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const double* src = ds.row(std::size_t(rows[k]));
            std::copy(src, src + ds.dim, features.begin() + long(k * ds.dim));
            labels[k] = ds.labels[std::size_t(rows[k])];
        }
        GroupedDataset sub = make_grouped_dataset(std::move(features), ds.dim, std::move(labels),
                                                  std::move(gids), 1);
        for (const Stump& s : enumerate_stump_cover(sub, 0.0).stumps)
            pool.emplace(s.feature, s.direction, s.threshold);
    }
    return pool.size();
}

}  // namespace

CoverTrainResult train_cover(const GroupedDataset& ds, Power p, const std::vector<double>& weights,
                             double epsilon, double delta, LossKind kind) {
    if (kind != LossKind::zero_one)
        throw std::invalid_argument("train_cover: stump enumeration is defined for the zero-one loss");
    require_fair_malfare(p);
    if (!(epsilon > 0.0)) throw std::invalid_argument("train_cover: epsilon must be > 0");
    const std::vector<double> w = resolve_weights(ds, weights);

    CoverTrainResult result;
    result.epsilon = epsilon;
    result.delta = delta;
    result.gamma = epsilon / (3.0 * std::sqrt(double(ds.groups)));

    const StumpCover cover = enumerate_stump_cover(ds, result.gamma);
    result.cover_size = cover.stumps.size();
    result.union_cover_size = union_of_group_covers_size(ds);

    double best = std::numeric_limits<double>::infinity();
    for (const Stump& stump : cover.stumps) {
        std::vector<double> risks = stump_group_risks(stump, ds);
        const double value = power_mean(SentimentProfile(risks, w), p);
        if (value < best) {  // strict: lowest index wins ties
            best = value;
            result.best = stump;
            result.group_risks = std::move(risks);
        }
    }
    result.objective = best;

    const double log_cover = std::log(double(result.cover_size));
    result.m_uc = uc_sample_complexity(1.0, ds.groups, delta, epsilon / 3.0,
                                       [log_cover](double) { return log_cover; });
    return result;
}

MixTrainResult realizable_mix_train(const GroupedDataset& ds, LossKind kind, double epsilon,
                                    double delta, const TrainConfig& base,
                                    const SingleTrainer& trainer) {
    (void)delta;  // statistical budget of the wrapped trainer; unused by the fixed-sample path
    if (!(epsilon > 0.0)) throw std::invalid_argument("realizable_mix_train: epsilon must be > 0");

    // EMM at p = 1 with uniform weights IS risk minimization over the uniform
    // group mixture, which is what the reduction pools.
    TrainConfig cfg = base;
    cfg.p = Power(1.0);
    cfg.weights.assign(std::size_t(ds.groups), 1.0 / double(ds.groups));
    cfg.epsilon = epsilon / double(ds.groups);

    LinearModel model = trainer ? trainer(ds, kind, cfg) : train_psg(ds, kind, cfg).model;

    MixTrainResult result;
    result.group_risks = group_risks(model, ds, kind, base.bias_weighting).per_group;
    result.epsilon = epsilon;
    const double worst = *std::max_element(result.group_risks.begin(), result.group_risks.end());
    result.guarantee_met = worst <= epsilon;
    result.model = std::move(model);
    return result;
}

std::vector<SweepRow> sweep_p(const GroupedDataset& train, const GroupedDataset& test,
                              LossKind kind, const std::vector<Power>& grid,
                              const TrainConfig& base) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const Power& p : grid) {
        TrainConfig cfg = base;
        cfg.p = p;
        TrainResult trained = train_psg(train, kind, cfg);

        SweepRow row;
        row.p = p;
        row.eps_opt = trained.eps_opt;
        row.train_risks =
            group_risks(trained.model, train, kind, base.bias_weighting).per_group;
        const std::vector<double> w = resolve_weights(train, base.weights);
        row.train_malfare = power_mean(SentimentProfile(row.train_risks, w), p);
        if (test.rows > 0) {
            row.test_risks = group_risks(trained.model, test, kind, base.bias_weighting).per_group;
            row.test_malfare = power_mean(SentimentProfile(row.test_risks, w), p);
        } else {
            row.test_malfare = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace malfare
