#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "malfare/power.hpp"
#include "malfare/profile.hpp"

namespace malfare {

enum class BoundMethod { hoeffding, bennett };

// Point estimate plus a finite-sample confidence bracket
//   M_p(0 v (S^ - eps); w)  <=  M_p(S; w)  <=  M_p(S^ + eps; w).
struct BoundReport {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> epsilon_per_group;
    BoundMethod method = BoundMethod::hoeffding;
    double delta = 0.0;
    long long m = 0;   // per-group sample count
    double r = 0.0;    // loss range upper bound
    std::optional<std::uint64_t> seed;
    // Bennett run with sample variances instead of known ones; the bound is
    // then a heuristic, not the corollary's guarantee.
    bool heuristic_variances = false;
};

// Power mean of per-group empirical means. Groups must be nonempty with
// finite nonnegative losses.
double plugin_malfare(const std::vector<std::vector<double>>& samples,
                      const std::vector<double>& weights, const PowerSpec& spec);

// r * sqrt(ln(2g/delta) / 2m); the same epsilon serves every group.
double hoeffding_epsilon(double r, int groups, double delta, long long m);

// Per-group r*ln(2g/delta)/3m + sqrt(2*Var_i*ln(2g/delta)/m).
std::vector<double> bennett_epsilon(double r, int groups, double delta, long long m,
                                    const std::vector<double>& variances);

std::vector<double> empirical_variances(const std::vector<std::vector<double>>& samples);

// Requires a fair malfare spec (p >= 1) and equal per-group sample counts.
// r == 0 is accepted as the degenerate zero-width bracket.
BoundReport malfare_bracket(const std::vector<std::vector<double>>& samples,
                            const std::vector<double>& weights, const PowerSpec& spec,
                            BoundMethod method, double delta, double r,
                            const std::optional<std::vector<double>>& variances = std::nullopt,
                            bool variances_are_empirical = false);

// ceil(8 |l|_inf^2 ln((2g/delta)^(1/4) N(eps/4)) / eps^2), with ln N supplied
// by the caller as a function of the cover resolution.
long long uc_sample_complexity(double ell_inf, int groups, double delta, double eps,
                               const std::function<double(double)>& log_covering);

// Smallest m with (1-p)^m <= delta: how many draws are needed before an
// all-zero Bernoulli sample stops being plausible. Lower-bounds the sample
// complexity of Nash-social-welfare estimation.
long long nsw_hardness_bound(double p_bias, double delta);

// Monte-Carlo frequency of the all-zero event over `trials` simulations of
// m Bernoulli(p_bias) draws; expected value (1-p_bias)^m. Per-trial streams
// derive from (seed, trial index).
double nsw_hardness_simulate(double p_bias, long long m, long long trials, std::uint64_t seed);

// Weighted two-group Nash welfare of the same construction: W_0 = p^w.
double nsw_weighted_welfare(double p_bias, double w);

}  // namespace malfare
