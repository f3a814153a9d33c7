#include "gme/kernels.hpp"

namespace gme::kernels {
namespace {

cplx dot_scalar(const cplx* a, const cplx* x, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        re += ar * xr - ai * xi;
        im += ar * xi + ai * xr;
    }
    return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

double sumsq_scalar(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &dot_scalar, &axpy_scalar, &sumsq_scalar};
    return table;
}

} // namespace gme::kernels
