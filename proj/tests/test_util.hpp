#pragma once

// Oracles and generators shared by the test binaries. Nothing here calls the
// contraction kernels, so results stay independent of the code under test.

#include "gme/tensor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace gme::test {

/// Direct sum over every index tuple.
inline cplx brute_contract(const StateTensor& t, const std::vector<Factor>& u) {
    cplx sum{};
    std::vector<std::size_t> idx(t.rank(), 0);
    std::size_t flat = 0;
    const auto e = t.entries();
    do {
        cplx term = e[flat++];
        for (std::size_t k = 0; k < idx.size(); ++k) term *= u[k][idx[k]];
        sum += term;
    } while (next_index(idx, t.dims()));
    return sum;
}

inline StateTensor random_tensor(const Dims& dims, std::mt19937_64& rng, bool normalized = true) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> e(product(dims));
    double s = 0.0;
    for (auto& c : e) {
        c = {n(rng), n(rng)};
        s += std::norm(c);
    }
    if (normalized) {
        for (auto& c : e) c /= std::sqrt(s);
    }
    return StateTensor(dims, std::move(e));
}

inline Factor random_unit(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Factor v(d);
    double s = 0.0;
    for (auto& c : v) {
        c = {n(rng), n(rng)};
        s += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(s);
    return v;
}

inline std::vector<Factor> random_factors(const Dims& dims, std::mt19937_64& rng) {
    std::vector<Factor> f;
    for (auto d : dims) f.push_back(random_unit(d, rng));
    return f;
}

/// Haar-ish unitary from the QR factorization of a complex Gaussian matrix.
inline std::vector<cplx> random_unitary(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = cplx{n(rng), n(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    std::vector<cplx> out(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out[i * d + j] = q(i, j);
    return out;
}

/// Top singular value by a full SVD.
inline double svd_sigma(std::span<const cplx> m, std::size_t rows, std::size_t cols) {
    Eigen::MatrixXcd a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = m[i * cols + j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace gme::test
