#include "gme/catalog.hpp"
#include "gme/error.hpp"
#include "gme/ket.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace gme;

namespace {

ParseErrorKind kind_of(std::string_view text) {
    try {
        (void)to_tensor(parse_ket(text));
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected a ParseError for: " << text);
    return ParseErrorKind::Syntax;
}

const KetTerm* find(const KetExpr& e, std::vector<std::size_t> levels) {
    for (const auto& t : e.terms) {
        if (t.levels == levels) return &t;
    }
    return nullptr;
}

} // namespace

TEST_CASE("W state as printed") {
    const auto e = parse_ket("(|100> + |010> + |001>)/sqrt(3)");
    CHECK(e.dims == Dims{2, 2, 2});
    REQUIRE(e.terms.size() == 3);
    for (const auto& t : e.terms) CHECK(std::abs(t.coeff - 1.0 / std::sqrt(3.0)) < 1e-15);

    const auto built = to_tensor(e);
    CHECK(built.scale == doctest::Approx(1.0).epsilon(1e-15));
    const auto& t = built.tensor;
    for (std::size_t flat = 0; flat < 8; ++flat) {
        const bool on = flat == 0b100 || flat == 0b010 || flat == 0b001;
        CHECK(std::abs(t.entries()[flat] - (on ? 1.0 / std::sqrt(3.0) : 0.0)) < 1e-15);
    }
}

TEST_CASE("phased 4-qubit state with root-of-unity coefficients") {
    const auto e = parse_ket(
        "1/sqrt(6)*(|0011>+|1100>) + exp(2i*pi/3)/sqrt(6)*(|0101>+|1010>) + exp(4i*pi/3)/sqrt(6)*(|0110>+|1001>)");
    REQUIRE(e.terms.size() == 6);
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CHECK(std::abs(find(e, {0, 1, 0, 1})->coeff - w / std::sqrt(6.0)) < 1e-15);
    CHECK(std::abs(find(e, {1, 0, 0, 1})->coeff - w * w / std::sqrt(6.0)) < 1e-15);
    // stored tensor is the conjugate of the amplitudes
    const auto t = to_tensor(e).tensor;
    const std::vector<std::size_t> idx{0, 1, 0, 1};
    CHECK(std::abs(t.at(idx) - std::conj(w) / std::sqrt(6.0)) < 1e-15);
    CHECK(test::max_abs_diff(t.entries(), cluster4().tensor->entries()) < 1e-15);
}

TEST_CASE("coefficient forms") {
    const auto e = parse_ket("dims: 2 3\n(0.5+0.5i)|00> - 2i*|11> + 3/4 (|02>) + sqrt(2)*1.5e-1|10>");
    CHECK(e.dims_declared);
    CHECK(e.dims == Dims{2, 3});
    CHECK(find(e, {0, 0})->coeff == cplx{0.5, 0.5});
    CHECK(find(e, {1, 1})->coeff == cplx{0.0, -2.0});
    CHECK(find(e, {0, 2})->coeff == cplx{0.75, 0.0});
    CHECK(std::abs(find(e, {1, 0})->coeff - std::sqrt(2.0) * 0.15) < 1e-16);
}

TEST_CASE("comma form and header-declared dimensions") {
    const auto e = parse_ket("# qudits\ndims: 12 3   # comment\n|0,2> + |11,0>");
    CHECK(e.dims == Dims{12, 3});
    CHECK(find(e, {11, 0}) != nullptr);
    const auto t = to_tensor(e).tensor;
    CHECK(t.size() == 36);

    // inferred dims: max level + 1 per mode
    CHECK(parse_ket("|0,11,2>").dims == Dims{1, 12, 3});
    CHECK(parse_ket("|012> + |100>").dims == Dims{2, 2, 3});
}

TEST_CASE("single-mode ket and auto-normalization") {
    const auto one = to_tensor(parse_ket("|0>"));
    CHECK(one.tensor.dims() == Dims{1});
    CHECK(one.tensor.entries()[0] == cplx{1.0, 0.0});

    const auto g = to_tensor(parse_ket("|00>+|11>"));
    CHECK(g.scale == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(g.tensor.entries()[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(frobenius_norm(g.tensor) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(to_tensor(parse_ket("|00>+|11>"), NormPolicy::Strict), ParseError);
    CHECK_NOTHROW(to_tensor(parse_ket("(|00>+|11>)/sqrt(2)"), NormPolicy::Strict));
}

TEST_CASE("merging identical kets") {
    const auto e = parse_ket("|01> + 2|01> - |10> + |10> + |11>");
    REQUIRE(e.terms.size() == 2);
    CHECK(find(e, {0, 1})->coeff == cplx{3.0, 0.0});
    CHECK(find(e, {1, 0}) == nullptr);
}

TEST_CASE("error kinds and positions") {
    CHECK(kind_of("|00> - |00>") == ParseErrorKind::ZeroState);
    CHECK(kind_of("|00> + |000>") == ParseErrorKind::MixedArity);
    CHECK(kind_of("dims: 2 2\n|02>") == ParseErrorKind::IndexOutOfRange);
    CHECK(kind_of("dims: 2 2 2\n|02>") == ParseErrorKind::DimsMismatch);
    CHECK(kind_of("|00> +") == ParseErrorKind::Syntax);
    CHECK(kind_of("|0a>") == ParseErrorKind::Syntax);
    CHECK(kind_of("|00") == ParseErrorKind::Syntax);
    CHECK(kind_of("3 + |0>") == ParseErrorKind::Syntax);
    CHECK(kind_of("|0>|1>") == ParseErrorKind::Syntax);
    CHECK(kind_of("2*sqrt(2)") == ParseErrorKind::Syntax);
    CHECK(kind_of("|0>/0") == ParseErrorKind::InvalidValue);
    CHECK(kind_of("sqrt(-2)|0>") == ParseErrorKind::InvalidValue);
    CHECK(kind_of("foo|0>") == ParseErrorKind::Syntax);
    CHECK(kind_of("") == ParseErrorKind::Syntax);
    CHECK(kind_of("# only a comment\n") == ParseErrorKind::Syntax);

    try {
        (void)parse_ket("|00>\n  + |0,1,2>");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::MixedArity);
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
}

TEST_CASE("term order does not change the tensor") {
    const auto a = to_tensor(parse_ket("|000>+|011>+|102>+|113>")).tensor;
    const auto b = to_tensor(parse_ket("|113>+|102>+|000>+|011>")).tensor;
    CHECK(a == b);
}

TEST_CASE("render then parse reproduces the term list") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        KetExpr e;
        e.dims = trial % 5 == 0 ? Dims{11, 2} : Dims{2, 3, 2};
        e.dims_declared = true;
        std::vector<std::size_t> idx(e.dims.size(), 0);
        do {
            if (n(rng) > 0.3) e.terms.push_back({{n(rng) * std::pow(10.0, n(rng) * 3), n(rng)}, idx});
        } while (next_index(idx, e.dims));
        if (e.terms.empty()) continue;
        CHECK(parse_ket(render_ket(e)) == e);
    }
}

TEST_CASE("catalog sources parse to the directly built tensors") {
    for (const auto& entry : catalog()) {
        if (entry.external()) continue;
        CAPTURE(entry.name);
        CAPTURE(entry.source);
        const auto built = to_tensor(parse_ket(entry.source), NormPolicy::Strict);
        CHECK(built.tensor.dims() == entry.dims);
        CHECK(test::max_abs_diff(built.tensor.entries(), entry.tensor->entries()) <= 1e-15);
    }
}

TEST_CASE("from_tensor inverts to_tensor") {
    const auto e = parse_ket("(0.6|01> + 0.8i|10>)");
    CHECK(from_tensor(to_tensor(e).tensor) == KetExpr{e.terms, e.dims, true});
}
