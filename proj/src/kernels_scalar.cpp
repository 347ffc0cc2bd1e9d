#include "oglp/kernels.hpp"

#include <algorithm>

namespace oglp::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double nrm2sq_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_add_scalar(double a, const double* x, double b, const double* y,
                      double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void clamp_scalar(const double* x, double lo, double hi, double* out,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(x[i], lo), hi);
}

void grad_combine_scalar(const double* zbar, const double* w,
                         const double* sadj, double beta, double alpha,
                         double* out, std::size_t n) {
    const double fourb = 4.0 * beta;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = 2.0 * zbar[i] + fourb * w[i] - alpha * sadj[i];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{dot_scalar,       nrm2sq_scalar, axpy_scalar,
                         scale_add_scalar, clamp_scalar,  grad_combine_scalar};
    return ops;
}

}  // namespace oglp::kern
