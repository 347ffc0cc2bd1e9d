#pragma once
// Vectorized arithmetic kernels used by the hot loops of the library.
//
// Every kernel has a scalar reference implementation and, where the
// platform allows, an AVX2 (x86-64) or NEON (aarch64) variant. The
// backend is chosen once at runtime; tests pin backends explicitly to
// check that the variants agree with the scalar reference.

#include <cstddef>
#include <string>

namespace oglp::kern {

enum class Backend { scalar, avx2, neon };

// Table of kernel entry points for one backend.
struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*nrm2sq)(const double*, std::size_t);
    // y += a * x
    void (*axpy)(double, const double*, double*, std::size_t);
    // out = a*x + b*y
    void (*scale_add)(double, const double*, double, const double*, double*,
                      std::size_t);
    // out = clamp(x, lo, hi)
    void (*clamp)(const double*, double, double, double*, std::size_t);
    // out = 2*z + 4*beta*w - alpha*sadj  (the gradient combine)
    void (*grad_combine)(const double*, const double*, const double*, double,
                         double, double*, std::size_t);
};

Backend active_backend();
std::string backend_name(Backend b);
bool backend_supported(Backend b);

// Pin the backend (tests only; throws std::invalid_argument if
// unsupported on this machine).
void force_backend(Backend b);

const Ops& scalar_ops();  // always available, the reference

double dot(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale_add(double a, const double* x, double b, const double* y,
               double* out, std::size_t n);
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);
void grad_combine(const double* zbar, const double* w, const double* sadj,
                  double beta, double alpha, double* out, std::size_t n);

}  // namespace oglp::kern
