#pragma once

// Complex multiply-accumulate kernels used by every tensor contraction.
//
// A scalar reference implementation is always available; an AVX2+FMA
// variant is compiled on x86-64 and picked at runtime when the CPU supports
// it. The environment variable GME_KERNELS=scalar|avx2 overrides the choice.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gme::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    /// sum_i a[i] * x[i] (bilinear, no conjugation)
    cplx (*dot)(const cplx* a, const cplx* x, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    /// sum_i |x[i]|^2
    double (*sumsq)(const cplx* x, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

/// The table selected for this process (resolved once).
const KernelTable& active();

/// Force a table by name ("scalar", "avx2"). Returns false if unavailable.
bool select(std::string_view name);

// Convenience wrappers over the active table.
inline cplx dot(std::span<const cplx> a, std::span<const cplx> x) {
    return active().dot(a.data(), x.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double sumsq(std::span<const cplx> x) {
    return active().sumsq(x.data(), x.size());
}

namespace detail {
cplx dot_avx2(const cplx* a, const cplx* x, std::size_t n);
void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double sumsq_avx2(const cplx* x, std::size_t n);
} // namespace detail

} // namespace gme::kernels
