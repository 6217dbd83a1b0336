#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace malfare {

// Nonnegative per-group sentiment values paired with a full-support
// probability weighting. Weights off by at most 1e-9 from unit sum are
// renormalized (CSV round-off); anything worse is rejected as a bug.
class SentimentProfile {
public:
    SentimentProfile(std::vector<double> values, std::vector<double> weights)
        : values_(std::move(values)), weights_(std::move(weights)) {
        if (values_.empty()) throw std::invalid_argument("profile: needs at least one group");
        if (values_.size() != weights_.size())
            throw std::invalid_argument("profile: values/weights size mismatch");
        double wsum = 0.0;
        for (double v : values_) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("profile: values must be finite and nonnegative");
        }
        for (double w : weights_) {
            if (!std::isfinite(w) || w <= 0.0)
                throw std::invalid_argument("profile: weights must be finite and positive");
            wsum += w;
        }
        if (std::abs(wsum - 1.0) > 1e-9)
            throw std::invalid_argument("profile: weights must sum to 1 (got off by more than 1e-9)");
        if (wsum != 1.0) {
            for (double& w : weights_) w /= wsum;
        }
    }

    static SentimentProfile uniform(std::vector<double> values) {
        std::vector<double> w(values.size(), values.empty() ? 0.0 : 1.0 / double(values.size()));
        return SentimentProfile(std::move(values), std::move(w));
    }

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> values_;
    std::vector<double> weights_;
};

}  // namespace malfare
