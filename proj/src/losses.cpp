#include "malfare/losses.hpp"

#include <cmath>
#include <stdexcept>

#include "malfare/kernels.hpp"

namespace malfare {
namespace {

void check_label(double y) {
    if (y != 1.0 && y != -1.0) throw std::invalid_argument("loss: label must be +1 or -1");
}

}  // namespace

const char* loss_name(LossKind kind) {
    switch (kind) {
        case LossKind::hinge: return "hinge";
        case LossKind::logistic_ce: return "logistic";
        case LossKind::zero_one: return "zero-one";
        case LossKind::square: return "square";
    }
    return "?";
}

LossKind parse_loss(const std::string& name) {
    if (name == "hinge") return LossKind::hinge;
    if (name == "logistic" || name == "logistic-ce" || name == "lrce") return LossKind::logistic_ce;
    if (name == "zero-one" || name == "01" || name == "zeroone") return LossKind::zero_one;
    if (name == "square") return LossKind::square;
    throw std::invalid_argument("unknown loss '" + name + "'");
}

bool loss_is_convex(LossKind kind) { return kind != LossKind::zero_one; }

double loss_value(LossKind kind, double y, double yhat) {
    check_label(y);
    switch (kind) {
        case LossKind::hinge: {
            const double t = 1.0 - y * yhat;
            return t > 0.0 ? t : 0.0;
        }
        case LossKind::logistic_ce: {
            const double m = y * yhat;
            return std::log1p(std::exp(-std::abs(m))) + (m < 0.0 ? -m : 0.0);
        }
        case LossKind::zero_one:
            return y * yhat <= 0.0 ? 1.0 : 0.0;
        case LossKind::square: {
            const double d = y - yhat;
            return d * d;
        }
    }
    throw std::logic_error("loss_value: bad kind");
}

double loss_dvalue(LossKind kind, double y, double yhat) {
    check_label(y);
    switch (kind) {
        case LossKind::hinge:
            return y * yhat < 1.0 ? -y : 0.0;
        case LossKind::logistic_ce: {
            // -y * sigma(-y*yhat), computed through the stable branch
            const double m = y * yhat;
            const double e = std::exp(-std::abs(m));
            const double sig_neg = m >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
            return -y * sig_neg;
        }
        case LossKind::square:
            return 2.0 * (yhat - y);
        case LossKind::zero_one:
            throw std::invalid_argument("loss_dvalue: zero-one loss is not convex; reporting only");
    }
    throw std::logic_error("loss_dvalue: bad kind");
}

std::vector<double> loss_subgradient(LossKind kind, double y, std::span<const double> x,
                                     std::span<const double> theta) {
    if (x.size() != theta.size())
        throw std::invalid_argument("loss_subgradient: x/theta size mismatch");
    const double yhat = kern::dot(x.data(), theta.data(), x.size());
    const double c = loss_dvalue(kind, y, yhat);
    std::vector<double> grad(x.size(), 0.0);
    if (c != 0.0) kern::axpy(c, x.data(), grad.data(), grad.size());
    return grad;
}

double l2_norm(std::span<const double> v) {
    return std::sqrt(kern::dot(v.data(), v.data(), v.size()));
}

std::vector<double> project_l2_ball(std::vector<double> theta, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("project_l2_ball: lambda must be > 0");
    const double norm = l2_norm(theta);
    if (norm > lambda) kern::scal(lambda / norm, theta.data(), theta.size());
    return theta;
}

}  // namespace malfare
