// NEON variants of the arithmetic kernels (aarch64 only).
#include "oglp/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace oglp::kern {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double nrm2sq_neon(const double* a, std::size_t n) {
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(a + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    const float64x2_t va = vdupq_n_f64(alpha);
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_add_neon(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
    std::size_t i = 0;
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vb = vdupq_n_f64(b);
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vmulq_f64(va, vld1q_f64(x + i));
        r = vfmaq_f64(r, vb, vld1q_f64(y + i));
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void clamp_neon(const double* x, double lo, double hi, double* out,
                std::size_t n) {
    std::size_t i = 0;
    const float64x2_t vlo = vdupq_n_f64(lo);
    const float64x2_t vhi = vdupq_n_f64(hi);
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        vst1q_f64(out + i, vminq_f64(vmaxq_f64(v, vlo), vhi));
    }
    for (; i < n; ++i) {
        double v = x[i] < lo ? lo : x[i];
        out[i] = v > hi ? hi : v;
    }
}

void grad_combine_neon(const double* zbar, const double* w, const double* sadj,
                       double beta, double alpha, double* out, std::size_t n) {
    std::size_t i = 0;
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t fourb = vdupq_n_f64(4.0 * beta);
    const float64x2_t na = vdupq_n_f64(-alpha);
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vmulq_f64(two, vld1q_f64(zbar + i));
        r = vfmaq_f64(r, fourb, vld1q_f64(w + i));
        r = vfmaq_f64(r, na, vld1q_f64(sadj + i));
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i)
        out[i] = 2.0 * zbar[i] + 4.0 * beta * w[i] - alpha * sadj[i];
}

}  // namespace

const Ops* neon_ops() {
    static const Ops ops{dot_neon,       nrm2sq_neon, axpy_neon,
                         scale_add_neon, clamp_neon,  grad_combine_neon};
    return &ops;
}

}  // namespace oglp::kern

#else

namespace oglp::kern {
const Ops* neon_ops() { return nullptr; }
}  // namespace oglp::kern

#endif
