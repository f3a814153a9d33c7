#include "gme/solver.hpp"

#include "gme/error.hpp"
#include "gme/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

namespace gme {

void SolverConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be a positive finite number");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tol must be a positive finite number");
    if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
    if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
}

bool SolveResult::any_converged() const { return std::find(converged.begin(), converged.end(), true) != converged.end(); }

namespace {

// Overlaps at or below this are treated as an orthogonal (stuck) start.
constexpr double kDegenerateOverlap = 1e-12;
constexpr int kMaxRedraws = 1000;

using Rng = std::mt19937_64;

Rng start_rng(std::uint64_t seed, std::uint64_t start) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(start >> 32), 0x9e3779b9u};
    return Rng(seq);
}

cplx unit_phase(cplx z) {
    const double a = std::abs(z);
    return a > 0.0 ? z / a : cplx{1.0, 0.0};
}

void normalize_in_place(Factor& v) {
    const double n = std::sqrt(kernels::sumsq(v));
    if (!(n > 0.0) || !std::isfinite(n)) throw NumericError("iteration produced a zero or non-finite factor");
    for (auto& c : v) c /= n;
}

/// Distance between two unit vectors after removing their relative phase.
double aligned_change(const Factor& prev, const Factor& cur) {
    cplx inner{0.0, 0.0};
    for (std::size_t j = 0; j < cur.size(); ++j) inner += std::conj(prev[j]) * cur[j];
    const cplx ph = unit_phase(inner);
    double s = 0.0;
    for (std::size_t j = 0; j < cur.size(); ++j) s += std::norm(cur[j] - ph * prev[j]);
    return std::sqrt(s);
}

/// Index of the largest-magnitude component; near-ties resolve to the first.
std::size_t leading_index(const Factor& v) {
    double best = 0.0;
    for (const auto& c : v) best = std::max(best, std::abs(c));
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(v[j]) >= best * (1.0 - 1e-9)) return j;
    }
    return 0;
}

void check_finite(const StateTensor& t) {
    for (const auto& c : t.entries()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericError("tensor has non-finite amplitudes");
    }
}

struct StartOutcome {
    double sigma = 0.0;
    std::vector<Factor> factors;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

std::vector<Factor> random_factors(const Dims& dims, Rng& rng) {
    std::vector<Factor> f;
    for (std::size_t d : dims) f.push_back(random_unit_vector(d, rng));
    return f;
}

/// Gauss-Seidel sweep over modes; the overlap is refreshed after every mode
/// so each update pairs with the current lambda.
StartOutcome iterate_general(const StateTensor& t, std::vector<Factor> u, const SolverConfig& cfg, Rng& rng) {
    const std::size_t n = t.rank();
    cplx f = contract_full(t, u);
    for (int redraw = 0; std::abs(f) <= kDegenerateOverlap; ++redraw) {
        if (redraw == kMaxRedraws) throw NumericError("could not find a start with nonzero overlap");
        u = random_factors(t.dims(), rng);
        f = contract_full(t, u);
    }

    StartOutcome out;
    std::vector<Factor> prev;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        prev = u;
        const cplx f_prev = f;
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = contract_all_but(t, u, k);
            Factor& uk = u[k];
            for (std::size_t j = 0; j < uk.size(); ++j) uk[j] = f * std::conj(v[j]) + cfg.alpha * uk[j];
            normalize_in_place(uk);
            f = kernels::dot(v, uk);
        }
        if (cfg.trace) out.trace.push_back(std::abs(f));
        out.iterations = it;

        double change = 0.0;
        for (std::size_t k = 0; k < n; ++k) change = std::max(change, aligned_change(prev[k], u[k]));
        if (std::abs(f - f_prev) <= cfg.tol * std::max(1.0, std::abs(f)) && change <= cfg.tol) {
            out.converged = true;
            break;
        }
    }

    // Spread the phase of the overlap evenly so the product of corrections is |f|/f.
    const cplx correction = std::pow(unit_phase(std::conj(f)), 1.0 / static_cast<double>(n));
    for (auto& uk : u) {
        for (auto& c : uk) c *= correction;
    }
    out.factors = canonical_gauge(t, std::move(u));
    out.sigma = std::abs(contract_full(t, out.factors));
    return out;
}

StartOutcome iterate_symmetric(const StateTensor& t, Factor u, const SolverConfig& cfg, Rng& rng) {
    const std::size_t n = t.rank();
    const std::size_t d = t.dim(0);
    std::vector<Factor> all(n, u);
    cplx f = contract_full(t, all);
    for (int redraw = 0; std::abs(f) <= kDegenerateOverlap; ++redraw) {
        if (redraw == kMaxRedraws) throw NumericError("could not find a start with nonzero overlap");
        u = random_unit_vector(d, rng);
        all.assign(n, u);
        f = contract_full(t, all);
    }

    StartOutcome out;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        const Factor prev = u;
        const cplx f_prev = f;
        std::vector<cplx> v(d);
        for (std::size_t k = 0; k < n; ++k) {
            const auto vk = contract_all_but(t, all, k);
            for (std::size_t j = 0; j < d; ++j) v[j] += vk[j];
        }
        for (auto& c : v) c /= static_cast<double>(n);
        for (std::size_t j = 0; j < d; ++j) u[j] = f * std::conj(v[j]) + cfg.alpha * u[j];
        normalize_in_place(u);
        all.assign(n, u);
        f = contract_full(t, all);
        if (cfg.trace) out.trace.push_back(std::abs(f));
        out.iterations = it;
        if (std::abs(f - f_prev) <= cfg.tol * std::max(1.0, std::abs(f)) && aligned_change(prev, u) <= cfg.tol) {
            out.converged = true;
            break;
        }
    }

    // The n-th root of |f|/f has n branches; take the one that leaves the
    // leading component closest to the positive real axis.
    const double n_d = static_cast<double>(n);
    const double base = std::arg(std::conj(f)) / n_d;
    const double lead = std::arg(u[leading_index(u)]);
    double best_angle = base;
    double best_dev = 10.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double angle = base + 2.0 * std::numbers::pi * static_cast<double>(m) / n_d;
        const double dev = std::abs(std::remainder(lead + angle, 2.0 * std::numbers::pi));
        if (dev < best_dev - 1e-12) {
            best_dev = dev;
            best_angle = angle;
        }
    }
    const cplx rot = std::polar(1.0, best_angle);
    for (auto& c : u) c *= rot;
    out.factors.assign(n, u);
    out.sigma = std::abs(contract_full(t, out.factors));
    return out;
}

template <class Fn>
SolveResult multi_start(const SolverConfig& cfg, Fn&& run_start) {
    const auto starts = static_cast<std::size_t>(cfg.restarts);
    std::vector<StartOutcome> outcomes(starts);
    std::vector<std::exception_ptr> errors(starts);
    auto work = [&](std::size_t s) {
        try {
            Rng rng = start_rng(cfg.seed, s);
            outcomes[s] = run_start(rng);
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, starts));
    if (workers <= 1) {
        for (std::size_t s = 0; s < starts; ++s) work(s);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t s = w; s < starts; s += workers) work(s);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SolveResult r;
    std::size_t best = 0;
    for (std::size_t s = 0; s < starts; ++s) {
        const auto& o = outcomes[s];
        r.iterations.push_back(o.iterations);
        r.converged.push_back(o.converged);
        const auto& b = outcomes[best];
        if (o.sigma > b.sigma || (o.sigma == b.sigma && o.iterations < b.iterations)) best = s;
    }
    r.best_start = best;
    r.sigma = outcomes[best].sigma;
    r.closest.emplace(std::move(outcomes[best].factors));
    if (cfg.trace) r.lambda_trace = std::move(outcomes[best].trace);
    return r;
}

StateTensor prepare(const StateTensor& t) {
    check_finite(t);
    return normalize(t);
}

} // namespace

std::vector<Factor> canonical_gauge(const StateTensor& t, std::vector<Factor> factors) {
    const std::size_t n = factors.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const cplx ph = std::conj(unit_phase(factors[k][leading_index(factors[k])]));
        for (auto& c : factors[k]) c *= ph;
    }
    const cplx f = contract_full(t, factors);
    if (std::abs(f) > 0.0) {
        const cplx ph = std::conj(unit_phase(f));
        for (auto& c : factors[n - 1]) c *= ph;
    }
    return factors;
}

SolveResult power_iterate(const StateTensor& t, const ProductState& start, const SolverConfig& cfg) {
    cfg.validate();
    check_finite(t);
    if (start.rank() != t.rank()) throw ShapeError("start state rank does not match tensor rank");
    for (std::size_t k = 0; k < t.rank(); ++k) {
        if (start.factor(k).size() != t.dim(k)) throw ShapeError("start factor " + std::to_string(k + 1) + " has the wrong length");
    }
    Rng rng = start_rng(cfg.seed, 0);
    StartOutcome o = iterate_general(t, std::vector<Factor>(start.factors().begin(), start.factors().end()), cfg, rng);
    SolveResult r;
    r.sigma = o.sigma;
    r.closest.emplace(std::move(o.factors));
    r.iterations = {o.iterations};
    r.converged = {o.converged};
    r.lambda_trace = std::move(o.trace);
    return r;
}

SolveResult solve(const StateTensor& t, const SolverConfig& cfg) {
    if (cfg.symmetric_mode) return solve_symmetric(t, cfg);
    cfg.validate();
    const StateTensor a = prepare(t);
    return multi_start(cfg, [&](Rng& rng) { return iterate_general(a, random_factors(a.dims(), rng), cfg, rng); });
}

SolveResult solve_symmetric(const StateTensor& t, const SolverConfig& cfg) {
    cfg.validate();
    if (!is_symmetric(t, 1e-12)) throw InvalidArgument("symmetric solver needs a symmetric tensor");
    const StateTensor a = prepare(t);
    return multi_start(cfg, [&](Rng& rng) { return iterate_symmetric(a, random_unit_vector(a.dim(0), rng), cfg, rng); });
}

} // namespace gme
