#include "malfare/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "malfare/aggregate.hpp"
#include "malfare/kernels.hpp"
#include "malfare/rng.hpp"

namespace malfare {
namespace {

std::vector<double> group_means(const std::vector<std::vector<double>>& samples) {
    if (samples.empty()) throw std::invalid_argument("estimation: no groups");
    std::vector<double> means;
    means.reserve(samples.size());
    for (const std::vector<double>& group : samples) {
        if (group.empty()) throw std::invalid_argument("estimation: empty group");
        for (double v : group)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("estimation: losses must be finite and nonnegative");
        means.push_back(kern::sum(group.data(), group.size()) / double(group.size()));
    }
    return means;
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("estimation: delta must lie in (0,1)");
}

}  // namespace

double plugin_malfare(const std::vector<std::vector<double>>& samples,
                      const std::vector<double>& weights, const PowerSpec& spec) {
    SentimentProfile profile(group_means(samples), weights);
    return malfare(profile, spec);
}

double hoeffding_epsilon(double r, int groups, double delta, long long m) {
    if (!(r > 0.0)) throw std::invalid_argument("hoeffding_epsilon: r must be > 0");
    if (groups < 1) throw std::invalid_argument("hoeffding_epsilon: g must be >= 1");
    check_delta(delta);
    if (m < 1) throw std::invalid_argument("hoeffding_epsilon: m must be >= 1");
    return r * std::sqrt(std::log(2.0 * double(groups) / delta) / (2.0 * double(m)));
}

std::vector<double> bennett_epsilon(double r, int groups, double delta, long long m,
                                    const std::vector<double>& variances) {
    if (!(r > 0.0)) throw std::invalid_argument("bennett_epsilon: r must be > 0");
    if (groups < 1) throw std::invalid_argument("bennett_epsilon: g must be >= 1");
    check_delta(delta);
    if (m < 1) throw std::invalid_argument("bennett_epsilon: m must be >= 1");
    if (variances.size() != std::size_t(groups))
        throw std::invalid_argument("bennett_epsilon: need one variance per group");
    const double log_term = std::log(2.0 * double(groups) / delta);
    std::vector<double> eps;
    eps.reserve(variances.size());
    for (double var : variances) {
        if (!(var >= 0.0) || var > r * r / 4.0 + 1e-12)
            throw std::invalid_argument("bennett_epsilon: variances must lie in [0, r^2/4]");
        eps.push_back(r * log_term / (3.0 * double(m)) +
                      std::sqrt(2.0 * var * log_term / double(m)));
    }
    return eps;
}

std::vector<double> empirical_variances(const std::vector<std::vector<double>>& samples) {
    std::vector<double> means = group_means(samples);
    std::vector<double> vars(samples.size(), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double acc = 0.0;
        for (double v : samples[i]) {
            const double d = v - means[i];
            acc += d * d;
        }
        vars[i] = acc / double(samples[i].size());
    }
    return vars;
}

BoundReport malfare_bracket(const std::vector<std::vector<double>>& samples,
                            const std::vector<double>& weights, const PowerSpec& spec,
                            BoundMethod method, double delta, double r,
                            const std::optional<std::vector<double>>& variances,
                            bool variances_are_empirical) {
    if (spec.sense != Sense::malfare || !(spec.p >= 1.0))
        throw std::invalid_argument("malfare_bracket: requires a fair malfare spec (p >= 1)");
    if (!(r >= 0.0)) throw std::invalid_argument("malfare_bracket: r must be >= 0");
    check_delta(delta);

    std::vector<double> means = group_means(samples);
    const int g = int(samples.size());
    const long long m = (long long)samples[0].size();
    for (const std::vector<double>& group : samples)
        if ((long long)group.size() != m)
            throw std::invalid_argument("malfare_bracket: per-group sample counts must match");
    if (r > 0.0)
        for (const std::vector<double>& group : samples)
            for (double v : group)
                if (v > r)
                    throw std::invalid_argument("malfare_bracket: loss exceeds range bound r");

    std::vector<double> eps(means.size(), 0.0);
    if (r > 0.0) {
        if (method == BoundMethod::hoeffding) {
            std::fill(eps.begin(), eps.end(), hoeffding_epsilon(r, g, delta, m));
        } else {
            if (!variances)
                throw std::invalid_argument("malfare_bracket: Bennett bound needs variances");
            eps = bennett_epsilon(r, g, delta, m, *variances);
        }
    }

    std::vector<double> lo(means.size()), hi(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) {
        lo[i] = std::max(0.0, means[i] - eps[i]);
        hi[i] = means[i] + eps[i];
    }

    BoundReport report;
    report.estimate = malfare(SentimentProfile(means, weights), spec);
    report.lower = malfare(SentimentProfile(lo, weights), spec);
    report.upper = malfare(SentimentProfile(hi, weights), spec);
    report.epsilon_per_group = eps;
    report.method = method;
    report.delta = delta;
    report.m = m;
    report.r = r;
    report.heuristic_variances = method == BoundMethod::bennett && variances_are_empirical;
    return report;
}

long long uc_sample_complexity(double ell_inf, int groups, double delta, double eps,
                               const std::function<double(double)>& log_covering) {
    if (!(ell_inf > 0.0)) throw std::invalid_argument("uc_sample_complexity: |l|_inf must be > 0");
    if (groups < 1) throw std::invalid_argument("uc_sample_complexity: g must be >= 1");
    check_delta(delta);
    if (!(eps > 0.0)) throw std::invalid_argument("uc_sample_complexity: eps must be > 0");
    const double log_n = log_covering(eps / 4.0);
    if (!(log_n >= 0.0)) throw std::invalid_argument("uc_sample_complexity: ln N must be >= 0");
    const double raw =
        8.0 * ell_inf * ell_inf *
        (0.25 * std::log(2.0 * double(groups) / delta) + log_n) / (eps * eps);
    return (long long)std::ceil(raw);
}

long long nsw_hardness_bound(double p_bias, double delta) {
    if (!(p_bias > 0.0 && p_bias <= 1.0))
        throw std::invalid_argument("nsw_hardness_bound: p_bias must lie in (0,1]");
    check_delta(delta);
    if (p_bias == 1.0) return 1;
    const double raw = std::log(delta) / std::log1p(-p_bias);
    long long m = std::max(1LL, (long long)std::ceil(raw));
    // pin to the definition (smallest m with (1-p)^m <= delta) against fp edge cases
    while (m > 1 && std::pow(1.0 - p_bias, double(m - 1)) <= delta) --m;
    while (std::pow(1.0 - p_bias, double(m)) > delta) ++m;
    return m;
}

double nsw_hardness_simulate(double p_bias, long long m, long long trials, std::uint64_t seed) {
    if (!(p_bias >= 0.0 && p_bias <= 1.0))
        throw std::invalid_argument("nsw_hardness_simulate: p_bias must lie in [0,1]");
    if (m < 1) throw std::invalid_argument("nsw_hardness_simulate: m must be >= 1");
    if (trials < 1) throw std::invalid_argument("nsw_hardness_simulate: trials must be >= 1");
    long long all_zero = 0;
    for (long long t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, std::uint64_t(t)));
        bool zero = true;
        for (long long k = 0; k < m; ++k) {
            if (rng.bernoulli(p_bias)) {
                zero = false;
                break;
            }
        }
        all_zero += zero ? 1 : 0;
    }
    return double(all_zero) / double(trials);
}

double nsw_weighted_welfare(double p_bias, double w) {
    if (!(p_bias >= 0.0 && p_bias <= 1.0))
        throw std::invalid_argument("nsw_weighted_welfare: p_bias must lie in [0,1]");
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("nsw_weighted_welfare: w must lie in (0,1)");
    return std::pow(p_bias, w);
}

}  // namespace malfare
