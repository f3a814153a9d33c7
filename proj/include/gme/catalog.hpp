#pragma once

// Named states with reference values: the golden corpus for the solver and
// the `reproduce` tables.

#include "gme/tensor.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gme {

struct CatalogEntry {
    std::string name;
    Dims dims;
    /// Absent for states whose amplitudes are only published elsewhere.
    std::optional<StateTensor> tensor;
    /// Reference value to 4 decimals.
    std::optional<double> expected_gme;
    double expected_bound = 0.0;
    std::string citation;
    /// Ket expression as printed, in the ket_parser grammar. Empty if external.
    std::string source;

    bool external() const { return !tensor.has_value(); }
};

CatalogEntry ghz(std::size_t n);
CatalogEntry qutrit_ghz();
CatalogEntry w3();
CatalogEntry dicke_qutrit();
CatalogEntry cluster4();
CatalogEntry ame5();
CatalogEntry six_qubit();
CatalogEntry qutrit4_uniform();
CatalogEntry ququart4_uniform();
CatalogEntry het223();
CatalogEntry het233();
CatalogEntry het224();
CatalogEntry uniform2_3x5_2();

/// Every named entry (ghz:2 and ghz:3 stand in for the ghz family).
const std::vector<CatalogEntry>& catalog();

/// Accepts canonical names, `ghz:N` for any N >= 2, and a few aliases
/// (dicke333, uniform2-3x5x2, qutrit4, ququart4). Throws NotFound.
CatalogEntry lookup(std::string_view name);

bool has_published_closest(std::string_view name);

/// Published closest product state, rescaled to unit factors. Throws NotFound.
ProductState published_closest_product(std::string_view name);

struct TableRow {
    std::string label;
    std::string entry;
    double reported_bound;
    double reported_gme;
};

struct ReferenceTable {
    std::string id; ///< "I", "II", "III", "examples"
    std::string title;
    std::string header; ///< first column heading
    std::vector<TableRow> rows;
};

const std::vector<ReferenceTable>& reference_tables();

} // namespace gme
