#include "gme/tensor.hpp"

#include "gme/error.hpp"
#include "gme/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gme {

std::size_t product(const Dims& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

bool next_index(std::vector<std::size_t>& index, const Dims& dims) {
    for (std::size_t k = index.size(); k-- > 0;) {
        if (++index[k] < dims[k]) return true;
        index[k] = 0;
    }
    return false;
}

StateTensor::StateTensor(Dims dims, std::vector<cplx> entries) : dims_(std::move(dims)), entries_(std::move(entries)) {
    if (dims_.empty()) throw ShapeError("tensor needs at least one mode");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (dims_[k] == 0) throw ShapeError("mode " + std::to_string(k + 1) + " has dimension 0");
    }
    if (entries_.size() != product(dims_)) {
        throw ShapeError("entry count " + std::to_string(entries_.size()) + " does not match product of dims " +
                         std::to_string(product(dims_)));
    }
}

StateTensor::StateTensor(Dims dims) : StateTensor(dims, std::vector<cplx>(product(dims))) {}

std::size_t StateTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw ShapeError("index arity does not match tensor rank");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (index[k] >= dims_[k]) {
            throw ShapeError("index " + std::to_string(index[k]) + " out of range for mode " + std::to_string(k + 1));
        }
        flat = flat * dims_[k] + index[k];
    }
    return flat;
}

cplx StateTensor::at(std::span<const std::size_t> index) const { return entries_[flat_index(index)]; }

namespace {

double norm2(const Factor& f) { return std::sqrt(kernels::sumsq(f)); }

void check_factor(const StateTensor& t, std::span<const Factor> factors, std::size_t skip) {
    if (factors.size() != t.rank()) {
        throw ShapeError("product state has " + std::to_string(factors.size()) + " factors, tensor has " +
                         std::to_string(t.rank()) + " modes");
    }
    for (std::size_t k = 0; k < t.rank(); ++k) {
        if (k == skip) continue;
        if (factors[k].size() != t.dim(k)) {
            throw ShapeError("mode " + std::to_string(k + 1) + ": factor length " + std::to_string(factors[k].size()) +
                             " != dimension " + std::to_string(t.dim(k)));
        }
    }
}

} // namespace

ProductState::ProductState(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("product state needs at least one factor");
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (factors_[k].empty()) throw ShapeError("factor " + std::to_string(k + 1) + " is empty");
        if (std::abs(norm2(factors_[k]) - 1.0) > 1e-12) {
            throw InvalidArgument("factor " + std::to_string(k + 1) + " is not unit norm");
        }
    }
}

ProductState ProductState::normalized(std::vector<Factor> factors) {
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const double n = norm2(factors[k]);
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw NumericError("factor " + std::to_string(k + 1) + " cannot be normalized");
        }
        for (auto& c : factors[k]) c /= n;
    }
    return ProductState(std::move(factors));
}

ProductState ProductState::basis(const Dims& dims, std::span<const std::size_t> index) {
    if (index.size() != dims.size()) throw ShapeError("basis index arity does not match dims");
    std::vector<Factor> f;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (index[k] >= dims[k]) throw ShapeError("basis index out of range in mode " + std::to_string(k + 1));
        Factor v(dims[k]);
        v[index[k]] = 1.0;
        f.push_back(std::move(v));
    }
    return ProductState(std::move(f));
}

Dims ProductState::dims() const {
    Dims d;
    for (const auto& f : factors_) d.push_back(f.size());
    return d;
}

std::vector<cplx> contract_all_but(const StateTensor& t, std::span<const Factor> factors, std::size_t mode) {
    if (mode >= t.rank()) {
        throw ShapeError("mode " + std::to_string(mode + 1) + " out of range for rank " + std::to_string(t.rank()));
    }
    check_factor(t, factors, mode);
    const auto& k = kernels::active();
    const Dims& dims = t.dims();

    // Contract trailing modes: each step is a row-wise dot against the last mode.
    std::vector<cplx> buf;
    std::span<const cplx> src = t.entries();
    for (std::size_t m = t.rank(); m-- > mode + 1;) {
        const std::size_t cols = dims[m];
        const std::size_t rows = src.size() / cols;
        std::vector<cplx> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = k.dot(src.data() + r * cols, factors[m].data(), cols);
        buf = std::move(out);
        src = buf;
    }
    // Contract leading modes: accumulate rows of the current matrix view.
    for (std::size_t m = 0; m < mode; ++m) {
        const std::size_t rows = dims[m];
        const std::size_t cols = src.size() / rows;
        std::vector<cplx> out(cols);
        for (std::size_t r = 0; r < rows; ++r) k.axpy(factors[m][r], src.data() + r * cols, out.data(), cols);
        buf = std::move(out);
        src = buf;
    }
    return std::vector<cplx>(src.begin(), src.end());
}

std::vector<cplx> contract_all_but(const StateTensor& t, const ProductState& p, std::size_t mode) {
    return contract_all_but(t, p.factors(), mode);
}

cplx contract_full(const StateTensor& t, std::span<const Factor> factors) {
    check_factor(t, factors, t.rank());
    const auto v = contract_all_but(t, factors, 0);
    return kernels::dot(v, factors[0]);
}

cplx contract_full(const StateTensor& t, const ProductState& p) { return contract_full(t, p.factors()); }

double frobenius_norm(const StateTensor& t) { return std::sqrt(kernels::sumsq(t.entries())); }

StateTensor normalize(const StateTensor& t) {
    const double n = frobenius_norm(t);
    if (!(n > 0.0)) throw NumericError("cannot normalize the zero tensor");
    if (!std::isfinite(n)) throw NumericError("tensor has non-finite entries");
    std::vector<cplx> e(t.entries().begin(), t.entries().end());
    for (auto& c : e) c /= n;
    return StateTensor(t.dims(), std::move(e));
}

StateTensor conjugate(const StateTensor& t) {
    std::vector<cplx> e(t.entries().begin(), t.entries().end());
    for (auto& c : e) c = std::conj(c);
    return StateTensor(t.dims(), std::move(e));
}

std::vector<cplx> matrix_slice(const StateTensor& t, std::span<const std::size_t> prefix) {
    const std::size_t n = t.rank();
    if (n < 2) throw ShapeError("matrix slice needs a tensor of rank >= 2");
    if (prefix.size() != n - 2) {
        throw ShapeError("slice prefix needs " + std::to_string(n - 2) + " indices, got " + std::to_string(prefix.size()));
    }
    std::size_t offset = 0;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (prefix[k] >= t.dim(k)) {
            throw ShapeError("slice index " + std::to_string(prefix[k]) + " out of range for mode " + std::to_string(k + 1));
        }
        offset = offset * t.dim(k) + prefix[k];
    }
    const std::size_t block = t.dim(n - 2) * t.dim(n - 1);
    const auto e = t.entries().subspan(offset * block, block);
    return std::vector<cplx>(e.begin(), e.end());
}

bool is_symmetric(const StateTensor& t, double tol) {
    const Dims& dims = t.dims();
    if (std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>{}) != dims.end()) return false;
    std::vector<std::size_t> idx(t.rank(), 0);
    do {
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            if (idx[k] == idx[k + 1]) continue;
            auto swapped = idx;
            std::swap(swapped[k], swapped[k + 1]);
            if (std::abs(t.at(idx) - t.at(swapped)) > tol) return false;
        }
    } while (next_index(idx, dims));
    return true;
}

StateTensor permute_modes(const StateTensor& t, std::span<const std::size_t> perm) {
    const std::size_t n = t.rank();
    if (perm.size() != n) throw InvalidArgument("permutation length does not match tensor rank");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw InvalidArgument("not a permutation of the tensor modes");
        seen[p] = true;
    }
    Dims new_dims(n);
    for (std::size_t k = 0; k < n; ++k) new_dims[k] = t.dim(perm[k]);
    std::vector<cplx> out(t.size());
    std::vector<std::size_t> idx(n, 0), old_idx(n);
    std::size_t flat = 0;
    do {
        for (std::size_t k = 0; k < n; ++k) old_idx[perm[k]] = idx[k];
        out[flat++] = t.at(old_idx);
    } while (next_index(idx, new_dims));
    return StateTensor(std::move(new_dims), std::move(out));
}

StateTensor apply_to_mode(const StateTensor& t, std::size_t mode, std::span<const cplx> u) {
    if (mode >= t.rank()) throw ShapeError("mode out of range");
    const std::size_t d = t.dim(mode);
    if (u.size() != d * d) throw ShapeError("mode matrix must be d x d for mode " + std::to_string(mode + 1));
    std::size_t inner = 1;
    for (std::size_t k = mode + 1; k < t.rank(); ++k) inner *= t.dim(k);
    const std::size_t outer = t.size() / (d * inner);
    const auto src = t.entries();
    std::vector<cplx> out(t.size());
    const auto& k = kernels::active();
    for (std::size_t o = 0; o < outer; ++o) {
        const cplx* block = src.data() + o * d * inner;
        cplx* dst = out.data() + o * d * inner;
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) k.axpy(u[j * d + i], block + i * inner, dst + j * inner, inner);
        }
    }
    return StateTensor(t.dims(), std::move(out));
}

} // namespace gme
