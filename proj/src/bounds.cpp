#include "gme/bounds.hpp"

#include "gme/error.hpp"
#include "gme/kernels.hpp"
#include "gme/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace gme {

double gme_from_sigma(double sigma) {
    constexpr double slack = 1e-9;
    if (!(sigma >= -slack && sigma <= 1.0 + slack)) {
        throw InvalidArgument("overlap " + std::to_string(sigma) + " outside [0, 1]");
    }
    return std::sqrt(2.0 - 2.0 * std::clamp(sigma, 0.0, 1.0));
}

double sigma_from_gme(double gme) { return (2.0 - gme * gme) / 2.0; }

double sigma_lower_bound(const Dims& dims) {
    if (dims.empty()) throw InvalidArgument("dims must not be empty");
    Dims sorted = dims;
    std::sort(sorted.begin(), sorted.end());
    double prod = 1.0;
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        if (sorted[k] == 0) throw InvalidArgument("dimensions must be positive");
        prod *= static_cast<double>(sorted[k]);
    }
    if (sorted.back() == 0) throw InvalidArgument("dimensions must be positive");
    return 1.0 / std::sqrt(prod);
}

double upper_bound(const Dims& dims) {
    const double s = sigma_lower_bound(dims);
    if (dims.size() == 1) return 0.0;
    return std::sqrt(2.0 - 2.0 * s);
}

namespace {

constexpr double kBipartiteTol = 1e-12;
constexpr int kBipartiteMaxIters = 10000;

double vec_norm(std::span<const cplx> v) { return std::sqrt(kernels::sumsq(v)); }

struct Power {
    std::vector<cplx> right;
    double sigma = 0.0;
};

// r <- A^H A r until the right vector stops moving.
Power hermitian_power(std::span<const cplx> m, std::size_t rows, std::size_t cols, std::vector<cplx> r) {
    std::vector<cplx> w(rows), z(cols);
    for (int it = 0; it < kBipartiteMaxIters; ++it) {
        for (std::size_t i = 0; i < rows; ++i) w[i] = kernels::active().dot(m.data() + i * cols, r.data(), cols);
        std::fill(z.begin(), z.end(), cplx{});
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) z[j] += std::conj(m[i * cols + j]) * w[i];
        }
        const double zn = vec_norm(z);
        if (!(zn > 0.0)) break;
        for (auto& c : z) c /= zn;
        cplx inner{};
        for (std::size_t j = 0; j < cols; ++j) inner += std::conj(r[j]) * z[j];
        const cplx ph = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx{1.0, 0.0};
        double change = 0.0;
        for (std::size_t j = 0; j < cols; ++j) change += std::norm(z[j] - ph * r[j]);
        r = z;
        if (std::sqrt(change) <= kBipartiteTol) break;
    }
    for (std::size_t i = 0; i < rows; ++i) w[i] = kernels::active().dot(m.data() + i * cols, r.data(), cols);
    return {std::move(r), vec_norm(w)};
}

} // namespace

BipartiteResult bipartite_sigma(std::span<const cplx> m, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || m.size() != rows * cols) throw ShapeError("matrix size does not match rows x cols");
    for (const auto& c : m) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericError("matrix has non-finite entries");
    }

    // Largest column norm is a lower bound on the top singular value and a
    // start with guaranteed overlap if the random start is unlucky.
    std::size_t best_col = 0;
    double best_col_norm = -1.0;
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(m[i * cols + j]);
        if (s > best_col_norm) {
            best_col_norm = s;
            best_col = j;
        }
    }
    double floor = std::sqrt(best_col_norm);
    for (std::size_t i = 0; i < rows; ++i) floor = std::max(floor, vec_norm(m.subspan(i * cols, cols)));
    if (!(floor > 0.0)) throw NumericError("zero matrix has no singular vectors");

    std::mt19937_64 rng(0x5eed);
    Power p = hermitian_power(m, rows, cols, random_unit_vector(cols, rng));
    if (p.sigma < floor * (1.0 - 1e-12)) {
        std::vector<cplx> e(cols);
        e[best_col] = 1.0;
        Power q = hermitian_power(m, rows, cols, std::move(e));
        if (q.sigma > p.sigma) p = std::move(q);
    }

    // u1^T M r = sigma when u1 = conj(M r) / sigma.
    Factor left(rows);
    for (std::size_t i = 0; i < rows; ++i) left[i] = std::conj(kernels::active().dot(m.data() + i * cols, p.right.data(), cols)) / p.sigma;
    const StateTensor t(Dims{rows, cols}, std::vector<cplx>(m.begin(), m.end()));
    auto factors = canonical_gauge(t, {std::move(left), std::move(p.right)});
    return {p.sigma, ProductState::normalized(std::move(factors))};
}

BipartiteResult bipartite_sigma(const StateTensor& t) {
    if (t.rank() != 2) throw ShapeError("bipartite oracle needs a rank-2 tensor, got rank " + std::to_string(t.rank()));
    return bipartite_sigma(t.entries(), t.dim(0), t.dim(1));
}

GmeReport make_gme_report(const Dims& dims, double sigma, ProductState closest) {
    const double d = gme_from_sigma(sigma);
    const double b = upper_bound(dims);
    return {sigma, d, b, b - d, std::move(closest)};
}

StateTensor maximally_entangled_bipartite(std::size_t d1, std::size_t d2) {
    if (d1 < 2) throw InvalidArgument("d1 must be at least 2");
    if (d1 > d2) throw InvalidArgument("d1 must not exceed d2");
    std::vector<cplx> e(d1 * d2);
    const double a = 1.0 / std::sqrt(static_cast<double>(d1));
    for (std::size_t j = 0; j < d1; ++j) e[j * d2 + j] = a;
    return StateTensor(Dims{d1, d2}, std::move(e));
}

} // namespace gme
