#pragma once

#include "malfare/profile.hpp"

namespace malfare {

// Relative inequality 1 - M_{1-eps}/M_1. The classical index lives on
// eps in [0, 1]; outside that range the identity below still holds but the
// index may exceed 1, so such results are marked extended_range.
struct AtkinsonIndex {
    double value;
    bool extended_range;
};

AtkinsonIndex atkinson_index(const SentimentProfile& profile, double eps);

// M_1(S; w) * (1 - ATK_{1-p}(S; w)); equals power_mean(profile, p) exactly.
double welfare_via_atkinson(const SentimentProfile& profile, double p);

}  // namespace malfare
