#include "gme/catalog.hpp"
#include "gme/error.hpp"
#include "gme/tensor.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace gme;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

StateTensor ghz2() { return StateTensor({2, 2}, {kInvSqrt2, 0.0, 0.0, kInvSqrt2}); }

StateTensor ghz3() {
    std::vector<cplx> e(8);
    e[0] = e[7] = kInvSqrt2;
    return StateTensor({2, 2, 2}, e);
}

StateTensor w_tensor() {
    std::vector<cplx> e(8);
    e[0b100] = e[0b010] = e[0b001] = kInvSqrt3;
    return StateTensor({2, 2, 2}, e);
}

const Factor e0{1.0, 0.0};
const Factor e1{0.0, 1.0};
const Factor plus{kInvSqrt2, kInvSqrt2};

} // namespace

TEST_CASE("StateTensor validates its shape") {
    CHECK_THROWS_AS(StateTensor({2, 2}, std::vector<cplx>(3)), ShapeError);
    CHECK_THROWS_AS(StateTensor({2, 0}, std::vector<cplx>{}), ShapeError);
    CHECK_THROWS_AS(StateTensor(Dims{}, std::vector<cplx>{}), ShapeError);
    const StateTensor t({1}, {1.0});
    CHECK(t.rank() == 1);
    const std::vector<std::size_t> idx{0, 1, 1};
    CHECK(ghz3().at(idx) == cplx{});
    const std::vector<std::size_t> bad{0, 2, 1};
    CHECK_THROWS_AS(ghz3().at(bad), ShapeError);
}

TEST_CASE("ProductState enforces unit factors") {
    CHECK_THROWS_AS(ProductState({{1.0, 1.0}}), InvalidArgument);
    const auto p = ProductState::normalized({{3.0, 4.0}});
    CHECK(p.factor(0)[0].real() == doctest::Approx(0.6));
    CHECK_THROWS_AS(ProductState::normalized({{0.0, 0.0}}), NumericError);
}

TEST_CASE("contract_full examples") {
    SUBCASE("2-GHZ with |00> has a single surviving term") {
        CHECK(std::abs(contract_full(ghz2(), ProductState({e0, e0})) - kInvSqrt2) < 1e-15);
    }
    SUBCASE("W with |+>^3") {
        // three terms, each (1/sqrt 3)(1/sqrt 2)^3
        const double expected = std::sqrt(3.0) / (2.0 * std::sqrt(2.0));
        const std::vector<Factor> u{plus, plus, plus};
        CHECK(std::abs(test::brute_contract(w_tensor(), u) - expected) < 1e-15);
        CHECK(std::abs(contract_full(w_tensor(), u) - expected) < 1e-15);
    }
    SUBCASE("a product tensor contracted with its own conjugated factors gives 1") {
        std::mt19937_64 rng(3);
        const Dims dims{2, 3, 4};
        const auto f = test::random_factors(dims, rng);
        std::vector<cplx> e(24);
        std::vector<std::size_t> idx(3, 0);
        std::size_t flat = 0;
        do {
            e[flat++] = std::conj(f[0][idx[0]] * f[1][idx[1]] * f[2][idx[2]]);
        } while (next_index(idx, dims));
        const StateTensor t(dims, e);
        CHECK(std::abs(contract_full(t, f) - 1.0) < 1e-14);
    }
    SUBCASE("dimension mismatch names the mode") {
        try {
            (void)contract_full(ghz3(), std::vector<Factor>{e0, Factor{1.0, 0.0, 0.0}, e0});
            FAIL("expected ShapeError");
        } catch (const ShapeError& err) {
            CHECK(std::string(err.what()).find("mode 2") != std::string::npos);
        }
        CHECK_THROWS_AS(contract_full(ghz3(), std::vector<Factor>{e0, e0}), ShapeError);
    }
}

TEST_CASE("contract_all_but examples") {
    const auto v = contract_all_but(ghz2(), std::vector<Factor>{Factor{}, e0}, 0);
    REQUIRE(v.size() == 2);
    CHECK(std::abs(v[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(v[1]) < 1e-15);

    const auto w = contract_all_but(w_tensor(), std::vector<Factor>{Factor{}, e0, e0}, 0);
    CHECK(std::abs(w[0]) < 1e-15);
    CHECK(std::abs(w[1] - kInvSqrt3) < 1e-15);

    CHECK_THROWS_AS(contract_all_but(ghz2(), std::vector<Factor>{e0, e0}, 2), ShapeError);
    CHECK_THROWS_AS(contract_all_but(ghz2(), std::vector<Factor>{e0, Factor{1.0}}, 0), ShapeError);
}

TEST_CASE("multilinearity and Cauchy-Schwarz on random inputs") {
    std::mt19937_64 rng(11);
    const std::vector<Dims> shapes{{2}, {3, 2}, {2, 2, 2}, {2, 3, 4}, {3, 3, 3, 2}, {2, 2, 2, 2, 2}};
    for (int trial = 0; trial < 60; ++trial) {
        const Dims& dims = shapes[trial % shapes.size()];
        const auto t = test::random_tensor(dims, rng, trial % 2 == 0);
        const auto u = test::random_factors(dims, rng);
        const cplx full = contract_full(t, u);
        CHECK(std::abs(full - test::brute_contract(t, u)) < 1e-12);
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const auto v = contract_all_but(t, u, k);
            cplx dot{};
            for (std::size_t j = 0; j < v.size(); ++j) dot += v[j] * u[k][j];
            CHECK(std::abs(dot - full) < 1e-12);
        }
        CHECK(std::abs(full) <= frobenius_norm(t) + 1e-12);
    }
}

TEST_CASE("frobenius_norm and normalize") {
    CHECK(frobenius_norm(ghz2()) == doctest::Approx(1.0).epsilon(1e-15));
    const StateTensor ones({2, 2, 2}, std::vector<cplx>(8, 1.0));
    CHECK(frobenius_norm(ones) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
    CHECK(frobenius_norm(normalize(ones)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(frobenius_norm(StateTensor({2, 2})) == 0.0);
    CHECK_THROWS_AS(normalize(StateTensor({2, 2})), NumericError);
    for (const auto& e : catalog()) {
        if (!e.tensor) continue;
        CAPTURE(e.name);
        CHECK(std::abs(frobenius_norm(*e.tensor) - 1.0) <= 1e-12);
    }
}

TEST_CASE("matrix_slice") {
    const std::vector<std::size_t> p0{0}, p1{1};
    const auto s0 = matrix_slice(ghz3(), p0);
    const auto s1 = matrix_slice(ghz3(), p1);
    const std::vector<cplx> m0{kInvSqrt2, 0.0, 0.0, 0.0};
    const std::vector<cplx> m1{0.0, 0.0, 0.0, kInvSqrt2};
    CHECK(test::max_abs_diff(s0, m0) == 0.0);
    CHECK(test::max_abs_diff(s1, m1) == 0.0);
    const std::vector<std::size_t> bad{2};
    CHECK_THROWS_AS(matrix_slice(ghz3(), bad), ShapeError);
    CHECK_THROWS_AS(matrix_slice(StateTensor({1}, {1.0}), std::span<const std::size_t>{}), ShapeError);

    // slices partition the entries
    std::mt19937_64 rng(5);
    for (const Dims& dims : {Dims{2, 3}, Dims{3, 2, 2}, Dims{2, 3, 2, 4}}) {
        const auto t = test::random_tensor(dims, rng, false);
        const Dims prefix_dims(dims.begin(), dims.end() - 2);
        std::vector<std::size_t> prefix(prefix_dims.size(), 0);
        double total = 0.0;
        do {
            for (const auto& c : matrix_slice(t, prefix)) total += std::norm(c);
        } while (!prefix.empty() && next_index(prefix, prefix_dims));
        CHECK(total == doctest::Approx(std::pow(frobenius_norm(t), 2)).epsilon(1e-12));
    }
}

TEST_CASE("is_symmetric") {
    CHECK(is_symmetric(w_tensor()));
    CHECK(is_symmetric(*dicke_qutrit().tensor));
    CHECK_FALSE(is_symmetric(StateTensor({2, 3}, std::vector<cplx>(6, 1.0))));
    // The phased 4-qubit state is not permutation invariant: swapping the
    // first two modes maps |0101> (phase w) to |1001> (phase w^2).
    const auto c4 = *cluster4().tensor;
    CHECK_FALSE(is_symmetric(c4));
    const std::vector<std::size_t> a{0, 1, 0, 1}, b{1, 0, 0, 1};
    CHECK(std::abs(c4.at(a) - c4.at(b)) > 0.1);
}

TEST_CASE("permute_modes") {
    std::mt19937_64 rng(9);
    const auto t = test::random_tensor({2, 3, 4}, rng);
    const std::vector<std::size_t> id{0, 1, 2};
    CHECK(permute_modes(t, id) == t);

    const auto m = test::random_tensor({2, 3}, rng);
    const std::vector<std::size_t> swap{1, 0};
    const auto mt = permute_modes(m, swap);
    CHECK(mt.dims() == Dims{3, 2});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::vector<std::size_t> ij{i, j}, ji{j, i};
            CHECK(mt.at(ji) == m.at(ij));
        }

    const std::vector<std::size_t> tr{0, 2, 1};
    CHECK(permute_modes(permute_modes(t, tr), tr) == t);
    const std::vector<std::size_t> cyc{2, 0, 1};
    CHECK(frobenius_norm(permute_modes(t, cyc)) == frobenius_norm(t));

    CHECK_THROWS_AS(permute_modes(t, std::vector<std::size_t>{0, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(permute_modes(t, std::vector<std::size_t>{0, 1}), InvalidArgument);

    // contraction commutes with relabeling
    const auto u = test::random_factors(t.dims(), rng);
    const std::vector<Factor> up{u[2], u[0], u[1]};
    CHECK(std::abs(contract_full(permute_modes(t, cyc), up) - contract_full(t, u)) < 1e-14);
}

TEST_CASE("apply_to_mode with a unitary preserves the norm") {
    std::mt19937_64 rng(13);
    const auto t = test::random_tensor({2, 3, 2}, rng);
    const auto u = test::random_unitary(3, rng);
    const auto r = apply_to_mode(t, 1, u);
    CHECK(frobenius_norm(r) == doctest::Approx(1.0).epsilon(1e-13));
    // identity leaves entries untouched
    const std::vector<cplx> id{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
    CHECK(test::max_abs_diff(apply_to_mode(t, 1, id).entries(), t.entries()) == 0.0);
}
