#pragma once

#include <cstddef>

// Data-parallel inner loops behind the risk and training code paths.
// Scalar reference kernels always exist; an AVX2 variant is selected at
// runtime when the CPU supports it. The two are equivalence-tested, not
// bit-identical (vector reduction reassociates sums and may contract to FMA).
namespace malfare::kern {

enum class Backend { auto_detect, scalar, avx2 };

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    // loss reductions over per-sample margins m_i = x_i . theta and labels y_i
    double (*hinge_loss_sum)(const double*, const double*, std::size_t);
    double (*zero_one_loss_sum)(const double*, const double*, std::size_t);
    double (*square_loss_sum)(const double*, const double*, std::size_t);
    double (*logistic_loss_sum)(const double*, const double*, std::size_t);
    const char* name;
};

const KernelTable& scalar_table();
// nullptr when this build or CPU cannot run AVX2
const KernelTable* avx2_table();

bool backend_available(Backend b);
// Throws std::runtime_error when the requested backend is unavailable.
// auto_detect re-probes the CPU (also honors MALFARE_KERNELS=scalar|avx2).
void set_backend(Backend b);
const KernelTable& active();
const char* backend_name();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline void scal(double alpha, double* x, std::size_t n) { active().scal(alpha, x, n); }
inline double hinge_loss_sum(const double* m, const double* y, std::size_t n) { return active().hinge_loss_sum(m, y, n); }
inline double zero_one_loss_sum(const double* m, const double* y, std::size_t n) { return active().zero_one_loss_sum(m, y, n); }
inline double square_loss_sum(const double* m, const double* y, std::size_t n) { return active().square_loss_sum(m, y, n); }
inline double logistic_loss_sum(const double* m, const double* y, std::size_t n) { return active().logistic_loss_sum(m, y, n); }

}  // namespace malfare::kern
