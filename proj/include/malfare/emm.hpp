#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "malfare/dataset.hpp"
#include "malfare/models.hpp"
#include "malfare/power.hpp"

namespace malfare {

// Inputs of the projected-subgradient trainer. lambda bounds the parameter
// ball; diam and lambda_h resolve to 2*lambda and the max sample norm when
// left at 0. All randomness (there is none inside the trainer itself) and
// derived runs key off seed, which is echoed into every artifact.
struct TrainConfig {
    Power p = Power(1.0);
    std::vector<double> weights;  // empty -> dataset group frequencies
    double epsilon = 0.1;         // target optimality gap
    double lambda = 1.0;          // l2-ball radius of theta
    double lambda_ell = 1.0;      // Lipschitz constant of the scalar loss
    double lambda_h = 0.0;        // Lipschitz constant of theta -> x.theta
    double diam = 0.0;            // diameter of the constraint set
    std::vector<double> theta0;   // empty -> zeros
    std::uint64_t seed = 0;
    bool bias_weighting = false;  // scale group risks by 1/b_i
    long long max_iterations = 10'000'000;
    std::size_t trace_max_points = 10'000;
    // verification mode: forward finite differences instead of the chain rule
    bool finite_difference_subgradient = false;
    double fd_step = 1e-6;
};

struct TracePoint {
    long long iter;
    double objective;
    double step_size;
};

struct TrainResult {
    LinearModel model;
    std::vector<TracePoint> trace;
    long long iterations = 0;  // n
    double step_size = 0.0;    // alpha
    double eps_opt = 0.0;      // diam * l_ell * l_H / sqrt(n)
    double best_objective = 0.0;
    double lambda_ell = 0.0, lambda_h = 0.0, diam = 0.0;
    std::uint64_t seed = 0;
};

// W_p of the (optionally bias-weighted) per-group risks; p >= 1.
double emm_objective(std::span<const double> theta, const GroupedDataset& ds, LossKind kind,
                     Power p, const std::vector<double>& weights, bool bias_weighting = false);

// Chain-rule subgradient sum_i w_i (R_i / W_p)^(p-1) dR_i for finite p, the
// maximal group's risk gradient for p = inf (lowest index on ties). Zero
// risks are guarded: R_i is floored at 1e-12 inside the ratio, and a fully
// zero profile falls back to the p = 1 chain weights.
std::vector<double> emm_subgradient(std::span<const double> theta, const GroupedDataset& ds,
                                    LossKind kind, Power p, const std::vector<double>& weights,
                                    bool bias_weighting = false);

// Projected subgradient descent with the fully derived constants
//   n = ceil((3 diam l_ell l_H / eps)^2),  alpha = diam / (l_ell l_H sqrt(n)).
// Returns the best-objective iterate, whose gap obeys
//   f(best) <= min f + diam*l_ell*l_H/sqrt(n) <= min f + eps/3.
TrainResult train_psg(const GroupedDataset& ds, LossKind kind, const TrainConfig& config);

// Decision stump: predicts direction where x[feature] > threshold and the
// opposite label elsewhere.
struct Stump {
    int feature = 0;
    int direction = 1;  // +-1
    double threshold = 0.0;

    double predict(const double* row) const {
        return row[feature] > threshold ? double(direction) : double(-direction);
    }
};

struct StumpCover {
    std::vector<Stump> stumps;
    double gamma = 0.0;
};

// Every stump behavior distinguishable on the pooled sample: per feature,
// midpoints between consecutive distinct values plus one below-min and one
// above-max threshold, times both directions. Exact (gamma = 0) empirical
// cover of the class, hence a valid gamma-cover for any gamma >= 0; size is
// at most 2 d (m+1).
StumpCover enumerate_stump_cover(const GroupedDataset& ds, double gamma);

struct CoverTrainResult {
    Stump best;
    double objective = 0.0;
    std::vector<double> group_risks;
    double gamma = 0.0;
    std::size_t cover_size = 0;
    std::size_t union_cover_size = 0;  // union of per-group covers, for comparison
    long long m_uc = 0;
    double epsilon = 0.0, delta = 0.0;
};

// Exhaustive EMM over the enumerated cover at resolution eps/(3 sqrt(g)),
// zero-one loss, lowest-index tie-breaking. Reports the uniform-convergence
// sample bound evaluated with ln N = ln(cover size); the sample itself is
// whatever the caller provides.
CoverTrainResult train_cover(const GroupedDataset& ds, Power p, const std::vector<double>& weights,
                             double epsilon, double delta, LossKind kind = LossKind::zero_one);

using SingleTrainer =
    std::function<LinearModel(const GroupedDataset&, LossKind, const TrainConfig&)>;

struct MixTrainResult {
    LinearModel model;
    std::vector<double> group_risks;
    // max group risk <= epsilon held; when false the caller's realizability
    // assertion is unverified and the epsilon guarantee does not apply
    bool guarantee_met = false;
    double epsilon = 0.0;
};

// Trains on the uniform mixture of the groups at tolerance epsilon/g
// (equivalently: p = 1 with uniform weights). When the groups are jointly
// realizable this bounds every fair malfare of the result by epsilon.
MixTrainResult realizable_mix_train(const GroupedDataset& ds, LossKind kind, double epsilon,
                                    double delta, const TrainConfig& base,
                                    const SingleTrainer& trainer = {});

struct SweepRow {
    Power p = Power(1.0);
    std::vector<double> train_risks, test_risks;
    double train_malfare = 0.0, test_malfare = 0.0;
    double eps_opt = 0.0;
};

// One train_psg run per grid point over a shared split and seed.
std::vector<SweepRow> sweep_p(const GroupedDataset& train, const GroupedDataset& test,
                              LossKind kind, const std::vector<Power>& grid,
                              const TrainConfig& base);

}  // namespace malfare
