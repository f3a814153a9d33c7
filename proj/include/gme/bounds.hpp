#pragma once

#include "gme/tensor.hpp"

#include <utility>

namespace gme {

/// sqrt(2 - 2 sigma). sigma is clamped to [0, 1] if it lies within 1e-9 of
/// the interval; farther out throws InvalidArgument.
double gme_from_sigma(double sigma);

/// Inverse of gme_from_sigma on [0, sqrt 2].
double sigma_from_gme(double gme);

/// Smallest overlap any normalized state of these dims can have with a
/// product state: 1/sqrt(product of all dims but the largest).
double sigma_lower_bound(const Dims& dims);

/// Dimension-only upper bound on the geometric measure:
/// sqrt(2 - 2 / sqrt(d_1 ... d_{n-1})) with dims sorted ascending.
/// 0 for a single mode. Throws InvalidArgument on empty dims or a zero dim.
double upper_bound(const Dims& dims);

struct BipartiteResult {
    double sigma;
    ProductState closest;
};

/// Top singular value of a rank-2 tensor and the product state attaining it,
/// by power iteration on A^H A (tolerance 1e-12, at most 10000 iterations).
BipartiteResult bipartite_sigma(const StateTensor& t);

/// Same on a row-major rows x cols matrix.
BipartiteResult bipartite_sigma(std::span<const cplx> matrix, std::size_t rows, std::size_t cols);

struct GmeReport {
    double sigma;
    double gme;   ///< gme_from_sigma(sigma)
    double bound; ///< upper_bound(dims)
    double slack; ///< bound - gme
    ProductState closest;
};

GmeReport make_gme_report(const Dims& dims, double sigma, ProductState closest);

/// Diagonal state with a_jj = 1/sqrt(d1). Requires 2 <= d1 <= d2.
StateTensor maximally_entangled_bipartite(std::size_t d1, std::size_t d2);

} // namespace gme
