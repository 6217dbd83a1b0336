#include "malfare/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace malfare {
namespace {

// Past this exponent the rescaled sum collapses to the dominant term anyway;
// pow() would only add rounding noise on the way to the same answer.
constexpr double kExtremePower = 700.0;

double min_value(const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end());
}

double max_value(const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end());
}

}  // namespace

double power_mean(const SentimentProfile& profile, Power p) {
    const std::vector<double>& values = profile.values();
    const std::vector<double>& weights = profile.weights();

    if (p.is_neg_inf()) return min_value(values);
    if (p.is_pos_inf()) return max_value(values);

    const double pf = p.finite_value();
    if (pf > kExtremePower) return max_value(values);
    if (pf < -kExtremePower) return min_value(values);

    if (pf == 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
        return acc;
    }

    if (pf == 0.0) {
        // right limit: any zero entry sends the geometric mean to 0
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0.0) return 0.0;
            acc += weights[i] * std::log(values[i]);
        }
        return std::exp(acc);
    }

    if (pf < 0.0) {
        // right limit again: (0+eps)^p blows up, so M_p -> 0
        for (double v : values)
            if (v == 0.0) return 0.0;
    }

    // Rescale by the extreme value of matching sign so every ratio^p stays in
    // (0, 1]; the raw definition overflows long before p reaches 700.
    const double scale = pf > 0.0 ? max_value(values) : min_value(values);
    if (scale == 0.0) return 0.0;  // all-zero profile with p > 0

    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        acc += weights[i] * std::pow(values[i] / scale, pf);
    return scale * std::pow(acc, 1.0 / pf);
}

double malfare(const SentimentProfile& profile, const PowerSpec& spec) {
    if (spec.sense != Sense::malfare)
        throw std::invalid_argument("malfare: spec sense must be malfare");
    spec.validate();
    return power_mean(profile, spec.p);
}

double welfare(const SentimentProfile& profile, const PowerSpec& spec) {
    if (spec.sense != Sense::welfare)
        throw std::invalid_argument("welfare: spec sense must be welfare");
    spec.validate();
    return power_mean(profile, spec.p);
}

double cas_mean(const SentimentProfile& profile, double p) {
    if (!std::isfinite(p)) throw std::invalid_argument("cas_mean: p must be finite");
    const std::vector<double>& values = profile.values();
    const std::vector<double>& weights = profile.weights();

    double acc = 0.0;
    if (p == 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0.0) return -std::numeric_limits<double>::infinity();
            acc += weights[i] * std::log(values[i]);
        }
        return acc;
    }
    const double sgn = p > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0 && p < 0.0) return -std::numeric_limits<double>::infinity();
        acc += weights[i] * std::pow(values[i], p);
    }
    return sgn * acc;
}

double generalized_f_mean(const SentimentProfile& profile,
                          const std::function<double(double)>& f,
                          const std::function<double(double)>& f_inverse) {
    const std::vector<double>& values = profile.values();
    const std::vector<double>& weights = profile.weights();

    for (double v : values) {
        const double back = f_inverse(f(v));
        if (!std::isfinite(back) || std::abs(back - v) > 1e-8 * std::max(1.0, std::abs(v)))
            throw std::invalid_argument("generalized_f_mean: f_inverse does not invert f on the inputs");
    }

    // strict monotonicity over the distinct input values
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() >= 2) {
        const bool increasing = f(sorted[1]) > f(sorted[0]);
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const double lo = f(sorted[i - 1]), hi = f(sorted[i]);
            if ((increasing && hi <= lo) || (!increasing && hi >= lo))
                throw std::invalid_argument("generalized_f_mean: f is not strictly monotone on the inputs");
        }
    }

    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * f(values[i]);
    return f_inverse(acc);
}

double affine_shift_mean(const SentimentProfile& profile, Power p, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("affine_shift_mean: beta must be >= 0");
    if (beta == 0.0) return power_mean(profile, p);
    std::vector<double> shifted = profile.values();
    for (double& v : shifted) v += beta;
    SentimentProfile shifted_profile(std::move(shifted), profile.weights());
    return power_mean(shifted_profile, p) - beta;
}

}  // namespace malfare
