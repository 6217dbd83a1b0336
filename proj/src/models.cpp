#include "malfare/models.hpp"

#include <cmath>
#include <stdexcept>

#include "malfare/kernels.hpp"

namespace malfare {

void LinearModel::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("LinearModel: lambda must be > 0");
    if (theta.empty()) throw std::invalid_argument("LinearModel: empty theta");
    if (l2_norm(theta) > lambda * (1.0 + 1e-9))
        throw std::invalid_argument("LinearModel: theta violates the l2-ball constraint");
}

double LinearModel::predict(std::span<const double> x) const {
    if (x.size() != theta.size()) throw std::invalid_argument("LinearModel: dimension mismatch");
    return kern::dot(x.data(), theta.data(), x.size());
}

RiskVector group_risks(std::span<const double> theta, const GroupedDataset& ds, LossKind kind,
                       bool apply_bias_weights) {
    if (theta.size() != ds.dim) throw std::invalid_argument("group_risks: dimension mismatch");

    RiskVector out;
    out.per_group.assign(std::size_t(ds.groups), 0.0);

    std::vector<double> margins, labels;
    for (int gi = 0; gi < ds.groups; ++gi) {
        const std::vector<int>& rows = ds.group_rows[std::size_t(gi)];
        if (rows.empty())
            throw std::invalid_argument("group_risks: group " + std::to_string(gi) + " is empty");
        margins.resize(rows.size());
        labels.resize(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::size_t r = std::size_t(rows[k]);
            margins[k] = kern::dot(ds.row(r), theta.data(), ds.dim);
            labels[k] = ds.labels[r];
        }
        double loss_sum;
        switch (kind) {
            case LossKind::hinge:
                loss_sum = kern::hinge_loss_sum(margins.data(), labels.data(), rows.size());
                break;
            case LossKind::logistic_ce:
                loss_sum = kern::logistic_loss_sum(margins.data(), labels.data(), rows.size());
                break;
            case LossKind::zero_one:
                loss_sum = kern::zero_one_loss_sum(margins.data(), labels.data(), rows.size());
                break;
            case LossKind::square:
                loss_sum = kern::square_loss_sum(margins.data(), labels.data(), rows.size());
                break;
            default:
                throw std::logic_error("group_risks: bad loss kind");
        }
        out.per_group[std::size_t(gi)] = loss_sum / double(rows.size());
    }

    if (apply_bias_weights) {
        std::vector<double> factors(std::size_t(ds.groups));
        for (int gi = 0; gi < ds.groups; ++gi) {
            const double b = ds.class_bias[std::size_t(gi)];
            if (!(b > 0.0))
                throw std::invalid_argument("group_risks: group " + std::to_string(gi) +
                                            " has class bias 0; 1/b is undefined");
            factors[std::size_t(gi)] = 1.0 / b;
            out.per_group[std::size_t(gi)] *= factors[std::size_t(gi)];
        }
        out.bias_weights = std::move(factors);
    }
    return out;
}

RiskVector group_risks(const LinearModel& model, const GroupedDataset& ds, LossKind kind,
                       bool apply_bias_weights) {
    model.validate();
    return group_risks(std::span<const double>(model.theta), ds, kind, apply_bias_weights);
}

double max_row_norm(const GroupedDataset& ds) {
    double best = 0.0;
    for (std::size_t i = 0; i < ds.rows; ++i) {
        const double norm = std::sqrt(kern::dot(ds.row(i), ds.row(i), ds.dim));
        if (norm > best) best = norm;
    }
    return best;
}

}  // namespace malfare
