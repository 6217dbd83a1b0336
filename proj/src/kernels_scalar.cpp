#include "malfare/kernels.hpp"

#include <cmath>

// Reference kernels. Fixed left-to-right summation order: per-group risks
// must not depend on how work is scheduled, so these are the ground truth
// the vector variants are tested against.
namespace malfare::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double hinge_sum_scalar(const double* m, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 1.0 - y[i] * m[i];
        acc += t > 0.0 ? t : 0.0;
    }
    return acc;
}

// sgn(0) counts as a miss for both labels, so the predicate is y*m <= 0
double zero_one_sum_scalar(const double* m, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (y[i] * m[i] <= 0.0) ? 1.0 : 0.0;
    return acc;
}

double square_sum_scalar(const double* m, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - m[i];
        acc += d * d;
    }
    return acc;
}

// ln(1+exp(-ym)) via log1p on the negative branch; stable for |ym| large
double logistic_sum_scalar(const double* m, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = y[i] * m[i];
        acc += std::log1p(std::exp(-std::abs(t))) + (t < 0.0 ? -t : 0.0);
    }
    return acc;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table = {
        dot_scalar,     sum_scalar,        axpy_scalar,       scal_scalar,
        hinge_sum_scalar, zero_one_sum_scalar, square_sum_scalar, logistic_sum_scalar,
        "scalar",
    };
    return table;
}

}  // namespace malfare::kern
