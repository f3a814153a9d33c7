#pragma once

// Largest U-eigenvalue (spectral radius) of a complex tensor by shifted
// higher-order power iteration with random restarts.
//
// For a normalized state tensor the spectral radius is the maximal overlap
// with a product state, and the returned closest state attains it.

#include "gme/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gme {

struct SolverConfig {
    double alpha = 1.0;      ///< positive shift added to every mode update
    double tol = 1e-10;
    int max_iters = 5000;    ///< sweeps per start
    int restarts = 64;
    std::uint64_t seed = 0;
    bool symmetric_mode = false;
    bool trace = false;      ///< keep |lambda_k| of the best start
    unsigned threads = 1;    ///< 0 = hardware concurrency; results do not depend on it

    /// Throws InvalidArgument on alpha/tol <= 0 or counts < 1.
    void validate() const;
};

struct SolveResult {
    double sigma = 0.0;
    std::optional<ProductState> closest;
    std::vector<int> iterations; ///< per start
    std::vector<bool> converged; ///< per start
    std::size_t best_start = 0;
    std::vector<double> lambda_trace;

    bool any_converged() const;
    bool best_converged() const { return !converged.empty() && converged[best_start]; }
};

/// Single start. `t` must be normalized and `start` must match its dims.
/// A start with (numerically) zero overlap is replaced by a random one drawn
/// from cfg.seed.
SolveResult power_iterate(const StateTensor& t, const ProductState& start, const SolverConfig& cfg);

/// Best of cfg.restarts random starts; start s uses its own RNG stream seeded
/// from (cfg.seed, s). Routes to solve_symmetric when cfg.symmetric_mode is set.
SolveResult solve(const StateTensor& t, const SolverConfig& cfg = {});

/// One shared factor for all modes. Throws InvalidArgument unless
/// is_symmetric(t).
SolveResult solve_symmetric(const StateTensor& t, const SolverConfig& cfg = {});

/// Rotate per-mode phases so factors 1..n-1 have a real nonnegative
/// largest component and the total overlap is real nonnegative.
std::vector<Factor> canonical_gauge(const StateTensor& t, std::vector<Factor> factors);

/// Random unit vector with standard complex Gaussian components.
template <class Rng>
Factor random_unit_vector(std::size_t d, Rng& rng);

} // namespace gme

#include "gme/detail/random_vector.hpp"
