#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace malfare {

// Aggregation exponent on the extended real line. The infinities are tagged
// states, never floating-point sentinels: min/max semantics are definitional.
class Power {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    Power() : kind_(Kind::finite), value_(1.0) {}
    Power(double p) : kind_(Kind::finite), value_(p) {
        if (std::isnan(p)) throw std::invalid_argument("Power: p must not be NaN");
        if (std::isinf(p)) kind_ = p > 0 ? Kind::pos_inf : Kind::neg_inf;
    }

    static constexpr Power pos_infinity() { return Power(Kind::pos_inf); }
    static constexpr Power neg_infinity() { return Power(Kind::neg_inf); }

    constexpr bool is_finite() const { return kind_ == Kind::finite; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    // Finite value; calling this on an infinite power is a logic error.
    double finite_value() const {
        if (!is_finite()) throw std::logic_error("Power: not finite");
        return value_;
    }

    constexpr bool operator==(const Power& o) const {
        return kind_ == o.kind_ && (kind_ != Kind::finite || value_ == o.value_);
    }
    constexpr bool operator<=(double bound) const {
        switch (kind_) {
            case Kind::neg_inf: return true;
            case Kind::pos_inf: return false;
            default: return value_ <= bound;
        }
    }
    constexpr bool operator>=(double bound) const {
        switch (kind_) {
            case Kind::neg_inf: return false;
            case Kind::pos_inf: return true;
            default: return value_ >= bound;
        }
    }

    std::string str() const {
        if (is_pos_inf()) return "inf";
        if (is_neg_inf()) return "-inf";
        return std::to_string(value_);
    }

    // Accepts a decimal literal, "inf", or "-inf".
    static Power parse(const std::string& text);

private:
    constexpr explicit Power(Kind k) : kind_(k), value_(0.0) {}
    Kind kind_;
    double value_;
};

enum class Sense { welfare, malfare };

// Aggregation parameter plus its sense. Fair-flagged specs restrict p to the
// range where the (anti-)Pigou-Dalton principle holds: p >= 1 for malfare,
// p <= 1 for welfare.
struct PowerSpec {
    Power p;
    Sense sense = Sense::malfare;
    bool fair = true;

    void validate() const {
        if (!fair) return;
        if (sense == Sense::malfare && !(p >= 1.0))
            throw std::invalid_argument("PowerSpec: fair malfare requires p >= 1");
        if (sense == Sense::welfare && !(p <= 1.0))
            throw std::invalid_argument("PowerSpec: fair welfare requires p <= 1");
    }
};

inline Power Power::parse(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "Inf" || text == "infinity")
        return pos_infinity();
    if (text == "-inf" || text == "-Inf" || text == "-infinity")
        return neg_infinity();
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("Power: cannot parse '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("Power: trailing characters in '" + text + "'");
    return Power(v);
}

}  // namespace malfare
