#pragma once

#include <span>
#include <string>
#include <vector>

namespace malfare {

enum class LossKind { hinge, logistic_ce, zero_one, square };

const char* loss_name(LossKind kind);
LossKind parse_loss(const std::string& name);
bool loss_is_convex(LossKind kind);

// Scalar loss on a +-1 label and a real-valued prediction.
//   hinge:    max(0, 1 - y*yhat)
//   logistic: ln(1 + exp(-y*yhat)), evaluated stably
//   zero-one: [y*sgn(yhat) <= 0], with sgn(0) counting as a miss
//   square:   (y - yhat)^2
double loss_value(LossKind kind, double y, double yhat);

// Subderivative of the loss with respect to yhat (hinge picks 0 at the kink);
// the parameter subgradient is this coefficient times x. Rejects zero-one.
double loss_dvalue(LossKind kind, double y, double yhat);

std::vector<double> loss_subgradient(LossKind kind, double y, std::span<const double> x,
                                     std::span<const double> theta);

// theta unchanged inside the ball, rescaled onto the boundary outside.
std::vector<double> project_l2_ball(std::vector<double> theta, double lambda);

double l2_norm(std::span<const double> v);

}  // namespace malfare
