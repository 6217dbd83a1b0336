#pragma once

#include <functional>

#include "malfare/power.hpp"
#include "malfare/profile.hpp"

namespace malfare {

// Weighted power mean M_p(S; w) over the extended real line.
//   finite p != 0:  (sum_i w_i S_i^p)^(1/p)
//   p = 0:          exp(sum_i w_i ln S_i)
//   p = -inf / inf: min / max of the values
// For p <= 0 a zero entry resolves to the right limit lim M_p(S+eps; w) = 0.
double power_mean(const SentimentProfile& profile, Power p);

// Semantic wrappers; both evaluate power_mean but enforce the sense and, when
// the spec is flagged fair, the Pigou-Dalton range of p.
double malfare(const SentimentProfile& profile, const PowerSpec& spec);
double welfare(const SentimentProfile& profile, const PowerSpec& spec);

// Canonical additively separable aggregate sum_i w_i f_p(S_i), with
// f_0 = ln and f_p(x) = sgn(p) x^p otherwise, taking right limits at zero
// entries (so the result may be -inf). For p > 0 this equals M_p^p and for
// p < 0 it equals -M_p^p; unlike the power mean it is not scale-stable.
double cas_mean(const SentimentProfile& profile, double p);

// Generalized f-mean f^{-1}(sum_i w_i f(S_i)) for strictly monotone f.
// The inverse is sanity-checked by round-tripping each input value.
double generalized_f_mean(const SentimentProfile& profile,
                          const std::function<double(double)>& f,
                          const std::function<double(double)>& f_inverse);

// M_p(S + beta; w) - beta. As beta grows this collapses toward M_1 for every
// p, which is what makes affine utility/loss shims unable to preserve
// fairness trade-offs; exposed for that limit check and for plot data.
double affine_shift_mean(const SentimentProfile& profile, Power p, double beta);

}  // namespace malfare
