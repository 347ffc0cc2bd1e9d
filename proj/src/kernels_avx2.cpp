// AVX2 variants of the arithmetic kernels. Compiled with -mavx2 only on
// x86-64; selected at runtime after a cpuid check.
#include "oglp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace oglp::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                              acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double nrm2sq_avx2(const double* a, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    const __m256d va = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                    _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_add_avx2(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
    std::size_t i = 0;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        r = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), r);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void clamp_avx2(const double* x, double lo, double hi, double* out,
                std::size_t n) {
    std::size_t i = 0;
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        v = _mm256_min_pd(_mm256_max_pd(v, vlo), vhi);
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < n; ++i) {
        double v = x[i] < lo ? lo : x[i];
        out[i] = v > hi ? hi : v;
    }
}

void grad_combine_avx2(const double* zbar, const double* w, const double* sadj,
                       double beta, double alpha, double* out, std::size_t n) {
    std::size_t i = 0;
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d fourb = _mm256_set1_pd(4.0 * beta);
    const __m256d na = _mm256_set1_pd(-alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_mul_pd(two, _mm256_loadu_pd(zbar + i));
        r = _mm256_fmadd_pd(fourb, _mm256_loadu_pd(w + i), r);
        r = _mm256_fmadd_pd(na, _mm256_loadu_pd(sadj + i), r);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i)
        out[i] = 2.0 * zbar[i] + 4.0 * beta * w[i] - alpha * sadj[i];
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops ops{dot_avx2,       nrm2sq_avx2, axpy_avx2,
                         scale_add_avx2, clamp_avx2,  grad_combine_avx2};
    return &ops;
}

}  // namespace oglp::kern

#else

namespace oglp::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace oglp::kern

#endif
