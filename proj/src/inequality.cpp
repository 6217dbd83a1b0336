#include "malfare/inequality.hpp"

#include <cmath>
#include <stdexcept>

#include "malfare/aggregate.hpp"

namespace malfare {

AtkinsonIndex atkinson_index(const SentimentProfile& profile, double eps) {
    if (!std::isfinite(eps)) throw std::invalid_argument("atkinson_index: eps must be finite");
    const double m1 = power_mean(profile, Power(1.0));
    if (m1 == 0.0) throw std::invalid_argument("atkinson_index: all-zero profile (0/0)");
    const double mp = power_mean(profile, Power(1.0 - eps));
    return AtkinsonIndex{1.0 - mp / m1, eps < 0.0 || eps > 1.0};
}

double welfare_via_atkinson(const SentimentProfile& profile, double p) {
    const double m1 = power_mean(profile, Power(1.0));
    if (m1 == 0.0) throw std::invalid_argument("welfare_via_atkinson: all-zero profile");
    return m1 * (1.0 - atkinson_index(profile, 1.0 - p).value);
}

}  // namespace malfare
