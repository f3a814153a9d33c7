#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gme {

using cplx = std::complex<double>;
using Dims = std::vector<std::size_t>;
using Factor = std::vector<cplx>;

/// Dense complex tensor, row-major over the index tuple (last mode fastest).
///
/// Holds the tensor A whose contraction with the factors of a product state
/// gives the overlap <Psi|Phi>, i.e. entries are the complex conjugates of the
/// state amplitudes. Immutable after construction.
class StateTensor {
public:
    /// Throws ShapeError if any dim is zero, dims is empty, or the entry
    /// count differs from the product of dims.
    StateTensor(Dims dims, std::vector<cplx> entries);

    /// All-zero tensor.
    explicit StateTensor(Dims dims);

    const Dims& dims() const noexcept { return dims_; }
    std::size_t rank() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const cplx> entries() const noexcept { return entries_; }

    /// Entry at a full index tuple. Throws ShapeError on a bad tuple.
    cplx at(std::span<const std::size_t> index) const;
    std::size_t flat_index(std::span<const std::size_t> index) const;

    bool operator==(const StateTensor&) const = default;

private:
    Dims dims_;
    std::vector<cplx> entries_;
};

/// One unit-norm vector per mode.
class ProductState {
public:
    /// Throws InvalidArgument unless every factor has unit norm within 1e-12.
    explicit ProductState(std::vector<Factor> factors);

    /// Rescales each factor to unit norm first (e.g. for 4-decimal printed data).
    static ProductState normalized(std::vector<Factor> factors);

    /// e_{index[k]} in every mode.
    static ProductState basis(const Dims& dims, std::span<const std::size_t> index);

    std::size_t rank() const noexcept { return factors_.size(); }
    const Factor& factor(std::size_t mode) const { return factors_.at(mode); }
    std::span<const Factor> factors() const noexcept { return factors_; }
    Dims dims() const;

private:
    std::vector<Factor> factors_;
};

/// sum a_{i1..in} u1_{i1} ... un_{in}. Throws ShapeError naming the first
/// mode whose factor length does not match.
cplx contract_full(const StateTensor& t, std::span<const Factor> factors);
cplx contract_full(const StateTensor& t, const ProductState& p);

/// Contract every mode except `mode`; the factor supplied for `mode` is
/// ignored (its length is not checked).
std::vector<cplx> contract_all_but(const StateTensor& t, std::span<const Factor> factors, std::size_t mode);
std::vector<cplx> contract_all_but(const StateTensor& t, const ProductState& p, std::size_t mode);

double frobenius_norm(const StateTensor& t);

/// t / ||t||. Throws NumericError on the zero tensor.
StateTensor normalize(const StateTensor& t);

StateTensor conjugate(const StateTensor& t);

/// Row-major d_{n-1} x d_n matrix obtained by fixing the first n-2 indices.
/// Needs rank >= 2 and prefix.size() == rank - 2.
std::vector<cplx> matrix_slice(const StateTensor& t, std::span<const std::size_t> prefix);

/// True iff all dims are equal and every adjacent-mode transposition changes
/// no entry by more than tol.
bool is_symmetric(const StateTensor& t, double tol = 1e-12);

/// new_index[k] = old_index[perm[k]]: mode k of the result is mode perm[k]
/// of the input. Throws InvalidArgument on an invalid permutation.
StateTensor permute_modes(const StateTensor& t, std::span<const std::size_t> perm);

/// Applies u (row-major d x d) to one mode: b_{..j..} = sum_i u_{j i} a_{..i..}.
StateTensor apply_to_mode(const StateTensor& t, std::size_t mode, std::span<const cplx> u);

/// Advance a row-major multi-index; returns false after the last tuple.
bool next_index(std::vector<std::size_t>& index, const Dims& dims);

std::size_t product(const Dims& dims);

} // namespace gme
