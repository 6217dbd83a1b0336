#include "malfare/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace malfare::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += a[i];
    return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

double hinge_sum_avx2(const double* m, const double* y, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ym = _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(m + i));
        __m256d t = _mm256_max_pd(_mm256_sub_pd(one, ym), zero);
        acc0 = _mm256_add_pd(acc0, t);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) {
        const double t = 1.0 - y[i] * m[i];
        acc += t > 0.0 ? t : 0.0;
    }
    return acc;
}

double zero_one_sum_avx2(const double* m, const double* y, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ym = _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(m + i));
        __m256d miss = _mm256_and_pd(_mm256_cmp_pd(ym, zero, _CMP_LE_OQ), one);
        acc0 = _mm256_add_pd(acc0, miss);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += (y[i] * m[i] <= 0.0) ? 1.0 : 0.0;
    return acc;
}

double square_sum_avx2(const double* m, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(m + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) {
        const double d = y[i] - m[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

const KernelTable* avx2_table() {
    // logistic stays on the scalar path: a vector exp/log1p would trade the
    // libm-accurate result for speed the trainer does not need
    static const KernelTable table = {
        dot_avx2,       sum_avx2,          axpy_avx2,        scal_avx2,
        hinge_sum_avx2, zero_one_sum_avx2, square_sum_avx2,
        scalar_table().logistic_loss_sum,
        "avx2",
    };
    return &table;
}

}  // namespace malfare::kern

#else

namespace malfare::kern {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace malfare::kern

#endif
