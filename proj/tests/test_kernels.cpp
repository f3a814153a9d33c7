#include "gme/kernels.hpp"
#include "gme/tensor.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace gme;

namespace {

struct KernelGuard {
    std::string previous{kernels::active().name};
    ~KernelGuard() { kernels::select(previous); }
};

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& c : v) c = {u(rng), u(rng)};
    return v;
}

} // namespace

TEST_CASE("scalar kernels are always available and selectable") {
    KernelGuard guard;
    CHECK(kernels::available_kernels().front()->name == "scalar");
    CHECK(kernels::select("scalar"));
    CHECK(kernels::active().name == "scalar");
    CHECK_FALSE(kernels::select("neon512"));
}

TEST_CASE("scalar kernels match textbook complex arithmetic") {
    const auto& k = kernels::scalar_kernels();
    const std::vector<cplx> a{{1, 2}, {3, -1}, {0, 0.5}};
    const std::vector<cplx> x{{2, 0}, {-1, 1}, {4, 4}};
    cplx expect{};
    for (std::size_t i = 0; i < 3; ++i) expect += a[i] * x[i];
    CHECK(std::abs(k.dot(a.data(), x.data(), 3) - expect) < 1e-15);

    std::vector<cplx> y{{1, 1}, {1, 1}, {1, 1}};
    k.axpy({0, 1}, x.data(), y.data(), 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(y[i] - (cplx{1, 1} + cplx{0, 1} * x[i])) < 1e-15);

    CHECK(k.sumsq(a.data(), 3) == doctest::Approx(5.0 + 10.0 + 0.25));
    CHECK(k.dot(a.data(), x.data(), 0) == cplx{});
}

TEST_CASE("every available kernel table agrees with the scalar reference") {
    std::mt19937_64 rng(42);
    const auto& ref = kernels::scalar_kernels();
    for (const auto* table : kernels::available_kernels()) {
        CAPTURE(table->name);
        for (std::size_t n = 0; n <= 37; ++n) {
            const auto a = random_vec(n, rng);
            const auto x = random_vec(n, rng);
            double scale = 1.0;
            for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i]) * std::abs(x[i]);

            CHECK(std::abs(table->dot(a.data(), x.data(), n) - ref.dot(a.data(), x.data(), n)) <= 1e-14 * scale);
            CHECK(std::abs(table->sumsq(a.data(), n) - ref.sumsq(a.data(), n)) <= 1e-14 * scale);

            const cplx alpha{0.3, -1.7};
            auto y1 = random_vec(n, rng);
            auto y2 = y1;
            table->axpy(alpha, x.data(), y1.data(), n);
            ref.axpy(alpha, x.data(), y2.data(), n);
            CHECK(test::max_abs_diff(y1, y2) <= 1e-14);
        }
    }
}

TEST_CASE("contractions agree across kernel tables") {
    KernelGuard guard;
    std::mt19937_64 rng(7);
    const auto t = test::random_tensor({3, 2, 5, 3}, rng);
    const auto u = test::random_factors(t.dims(), rng);
    const cplx oracle = test::brute_contract(t, u);
    for (const auto* table : kernels::available_kernels()) {
        CAPTURE(table->name);
        REQUIRE(kernels::select(table->name));
        CHECK(std::abs(contract_full(t, u) - oracle) < 1e-14);
        for (std::size_t m = 0; m < t.rank(); ++m) {
            const auto v = contract_all_but(t, u, m);
            cplx dot{};
            for (std::size_t j = 0; j < v.size(); ++j) dot += v[j] * u[m][j];
            CHECK(std::abs(dot - oracle) < 1e-14);
        }
    }
}
