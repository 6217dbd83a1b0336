#pragma once

#include <json.hpp>

#include "malfare/emm.hpp"
#include "malfare/estimation.hpp"
#include "malfare/models.hpp"
#include "malfare/power.hpp"

// JSON wire formats. Extended-real powers serialize as a number when finite
// and as the strings "inf" / "-inf" otherwise.
namespace malfare {

inline nlohmann::json power_to_json(const Power& p) {
    if (p.is_pos_inf()) return "inf";
    if (p.is_neg_inf()) return "-inf";
    return p.finite_value();
}

inline Power power_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Power::parse(j.get<std::string>());
    return Power(j.get<double>());
}

// flat object: estimate, lower, upper, method, delta, m, r, epsilon_per_group, seed?
inline nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json j{
        {"estimate", report.estimate},
        {"lower", report.lower},
        {"upper", report.upper},
        {"method", report.method == BoundMethod::hoeffding ? "hoeffding" : "bennett"},
        {"delta", report.delta},
        {"m", report.m},
        {"r", report.r},
        {"epsilon_per_group", report.epsilon_per_group},
    };
    if (report.seed) j["seed"] = *report.seed;
    if (report.heuristic_variances) j["heuristic_variances"] = true;
    return j;
}

inline nlohmann::json model_to_json(const LinearModel& model, const Power& p,
                                    const std::vector<double>& weights, std::uint64_t seed) {
    return nlohmann::json{
        {"theta", model.theta}, {"lambda", model.lambda}, {"loss", loss_name(model.loss)},
        {"p", power_to_json(p)}, {"weights", weights},   {"seed", seed},
    };
}

// training trace as JSON lines: {iter, objective, step_size}
inline std::string trace_to_jsonl(const std::vector<TracePoint>& trace) {
    std::string out;
    for (const TracePoint& t : trace) {
        nlohmann::json j{{"iter", t.iter}, {"objective", t.objective}, {"step_size", t.step_size}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline nlohmann::json stump_to_json(const Stump& stump) {
    return nlohmann::json{
        {"feature", stump.feature}, {"direction", stump.direction}, {"threshold", stump.threshold}};
}

}  // namespace malfare
