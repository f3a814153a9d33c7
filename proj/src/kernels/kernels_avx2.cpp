// Compiled with -mavx2 -mfma on x86-64 only; never called unless the
// dispatcher has confirmed CPU support.

#include "gme/kernels.hpp"

#if defined(GME_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace gme::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

// std::complex<double> is layout-compatible with double[2], so a 256-bit
// register holds two interleaved complex values [re0 im0 re1 im1].
cplx dot_avx2(const cplx* a, const cplx* x, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* px = reinterpret_cast<const double*>(x);
    __m256d prod = _mm256_setzero_pd();  // [ar*xr, ai*xi, ...]
    __m256d cross = _mm256_setzero_pd(); // [ar*xi, ai*xr, ...]
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        prod = _mm256_fmadd_pd(va, vx, prod);
        cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vx, 0b0101), cross);
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, prod);
    double re = (p[0] - p[1]) + (p[2] - p[3]);
    double im = hsum(cross);
    for (; i < n; ++i) {
        re += a[i].real() * x[i].real() - a[i].imag() * x[i].imag();
        im += a[i].real() * x[i].imag() + a[i].imag() * x[i].real();
    }
    return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const auto* px = reinterpret_cast<const double*>(x);
    auto* py = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d swapped = _mm256_permute_pd(vx, 0b0101);
        // [ar*xr - ai*xi, ar*xi + ai*xr]
        const __m256d ax = _mm256_fmaddsub_pd(ar, vx, _mm256_mul_pd(ai, swapped));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), ax));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

double sumsq_avx2(const cplx* x, std::size_t n) {
    const auto* px = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(px + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace gme::kernels::detail

#endif
