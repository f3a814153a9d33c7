#include "gme/bounds.hpp"
#include "gme/catalog.hpp"
#include "gme/error.hpp"
#include "gme/ket.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace gme;

TEST_CASE("every entry respects its own bound") {
    std::set<std::string> names;
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        CHECK(names.insert(e.name).second);
        CHECK(std::abs(e.expected_bound - upper_bound(e.dims)) <= 5e-5);
        if (e.expected_gme) CHECK(*e.expected_gme <= e.expected_bound + 5e-4);
        if (!e.external()) {
            CHECK(e.tensor->dims() == e.dims);
            CHECK(std::abs(frobenius_norm(*e.tensor) - 1.0) <= 1e-12);
            CHECK(!e.source.empty());
        } else {
            CHECK(e.source.empty());
        }
        CHECK(!e.citation.empty());
    }
    CHECK(names.count("six_qubit") == 1);
    CHECK(lookup("six_qubit").external());
}

TEST_CASE("printed closest product states attain the reported value") {
    // overlap implied by the reported GME: (2 - g^2) / 2
    int checked = 0;
    for (const auto& e : catalog()) {
        if (!has_published_closest(e.name)) continue;
        CAPTURE(e.name);
        const auto phi = published_closest_product(e.name);
        REQUIRE(phi.dims() == e.dims);
        const double g = *e.expected_gme;
        const double overlap = std::abs(test::brute_contract(*e.tensor, {phi.factors().begin(), phi.factors().end()}));
        CHECK(std::abs(overlap - (2.0 - g * g) / 2.0) <= 2e-3);
        ++checked;
    }
    CHECK(checked == 11);
    CHECK_THROWS_AS(published_closest_product("ghz:3"), NotFound);
}

TEST_CASE("ghz family") {
    const auto g4 = ghz(4);
    CHECK(g4.name == "ghz:4");
    CHECK(g4.dims == Dims{2, 2, 2, 2});
    CHECK(g4.tensor->entries()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(g4.tensor->entries()[15].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(*g4.expected_gme == doctest::Approx(0.7654).epsilon(1e-9));
    CHECK(g4.expected_bound == doctest::Approx(upper_bound(g4.dims)));
    CHECK(ghz(2).expected_bound == doctest::Approx(0.7654).epsilon(1e-4));
    CHECK_THROWS_AS(ghz(1), InvalidArgument);
    CHECK_THROWS_AS(ghz(25), InvalidArgument);
    CHECK(ghz(24).tensor->size() == (std::size_t{1} << 24));
}

TEST_CASE("lookup by name and alias") {
    CHECK(lookup("w3").name == "w3");
    CHECK(lookup("ghz:7").dims.size() == 7);
    CHECK(lookup("dicke333").name == "dicke_qutrit");
    CHECK(lookup("uniform2-3x5x2").name == "uniform2_3x5_2");
    CHECK(lookup("qutrit4_uniform").name == "qutrit4");
    CHECK(lookup("ququart4_uniform").name == "ququart4");
    CHECK_THROWS_AS(lookup("nope"), NotFound);
    CHECK_THROWS_AS(lookup("ghz:"), NotFound);
    CHECK_THROWS_AS(lookup("ghz:x"), NotFound);
}

TEST_CASE("reference tables point at catalog entries") {
    const auto& tables = reference_tables();
    REQUIRE(tables.size() == 4);
    CHECK(tables[0].id == "I");
    CHECK(tables[0].rows.size() == 5);
    CHECK(tables[1].rows.size() == 3);
    CHECK(tables[2].rows.size() == 4);
    for (const auto& t : tables) {
        for (const auto& r : t.rows) {
            CAPTURE(r.entry);
            const auto e = lookup(r.entry);
            CHECK(std::abs(r.reported_bound - e.expected_bound) <= 5e-5);
            CHECK(std::abs(r.reported_gme - *e.expected_gme) <= 1e-9);
        }
    }
}

TEST_CASE("exported source round-trips through the parser") {
    for (const auto& e : catalog()) {
        if (e.external()) continue;
        CAPTURE(e.name);
        const auto text = render_ket(from_tensor(*e.tensor));
        const auto back = to_tensor(parse_ket(text), NormPolicy::Strict).tensor;
        CHECK(test::max_abs_diff(back.entries(), e.tensor->entries()) <= 1e-12);
    }
}
