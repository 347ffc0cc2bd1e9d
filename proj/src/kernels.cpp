#include "oglp/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace oglp::kern {

const Ops* avx2_ops();  // defined in kernels_avx2.cpp (null if unsupported)
const Ops* neon_ops();  // defined in kernels_neon.cpp (null if unsupported)

namespace {

const Ops* ops_for(Backend b) {
    switch (b) {
        case Backend::scalar: return &scalar_ops();
        case Backend::avx2: return avx2_ops();
        case Backend::neon: return neon_ops();
    }
    return nullptr;
}

bool cpu_supports(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect() {
    // OGLP_FORCE_SCALAR=1 disables SIMD paths for debugging.
    if (const char* env = std::getenv("OGLP_FORCE_SCALAR");
        env && env[0] == '1')
        return Backend::scalar;
    if (cpu_supports(Backend::avx2)) return Backend::avx2;
    if (cpu_supports(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

struct State {
    Backend backend = detect();
    const Ops* ops = ops_for(backend);
};

State& state() {
    static State s;
    return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

bool backend_supported(Backend b) {
    return cpu_supports(b) && ops_for(b) != nullptr;
}

void force_backend(Backend b) {
    if (!backend_supported(b))
        throw std::invalid_argument("kernel backend not supported here: " +
                                    backend_name(b));
    state().backend = b;
    state().ops = ops_for(b);
}

double dot(const double* a, const double* b, std::size_t n) {
    return state().ops->dot(a, b, n);
}

double nrm2sq(const double* a, std::size_t n) {
    return state().ops->nrm2sq(a, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    state().ops->axpy(alpha, x, y, n);
}

void scale_add(double a, const double* x, double b, const double* y,
               double* out, std::size_t n) {
    state().ops->scale_add(a, x, b, y, out, n);
}

void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
    state().ops->clamp(x, lo, hi, out, n);
}

void grad_combine(const double* zbar, const double* w, const double* sadj,
                  double beta, double alpha, double* out, std::size_t n) {
    state().ops->grad_combine(zbar, w, sadj, beta, alpha, out, n);
}

}  // namespace oglp::kern
