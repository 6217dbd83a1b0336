#pragma once

#include <optional>
#include <span>
#include <vector>

#include "malfare/dataset.hpp"
#include "malfare/losses.hpp"

namespace malfare {

// lambda-l2-ball constrained linear predictor h(x; theta) = x . theta.
// No intercept; append a constant-1 feature to the data instead.
struct LinearModel {
    std::vector<double> theta;
    double lambda = 1.0;
    LossKind loss = LossKind::hinge;

    void validate() const;
    double predict(std::span<const double> x) const;
};

struct RiskVector {
    std::vector<double> per_group;
    // the 1/b_i class-bias factors, present when they were applied
    std::optional<std::vector<double>> bias_weights;
};

// Per-group mean loss of x . theta; with apply_bias_weights each group's risk
// is scaled by 1/b_i to correct class imbalance (both in training and in
// reporting unless the caller turns it off).
RiskVector group_risks(std::span<const double> theta, const GroupedDataset& ds, LossKind kind,
                       bool apply_bias_weights = false);
RiskVector group_risks(const LinearModel& model, const GroupedDataset& ds, LossKind kind,
                       bool apply_bias_weights = false);

// Largest row norm; the tight Lipschitz constant of theta -> x . theta.
double max_row_norm(const GroupedDataset& ds);

}  // namespace malfare
