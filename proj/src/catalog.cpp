#include "gme/catalog.hpp"

#include "gme/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gme {
namespace {

struct Weight {
    cplx value;
    const char* text; ///< "", "-" or "expr*"
};

const Weight kPlus{{1.0, 0.0}, ""};
const Weight kMinus{{-1.0, 0.0}, "-"};

struct Printed {
    Weight weight;
    std::string ket; ///< one digit per mode
};

struct Prefactor {
    double value;
    const char* text;
};

/// Builds tensor and source text from the same printed ket list.
CatalogEntry build(std::string name, Dims dims, Prefactor pre, const std::vector<Printed>& kets) {
    std::vector<cplx> entries(product(dims));
    std::string body;
    for (const auto& k : kets) {
        if (k.ket.size() != dims.size()) throw ShapeError("catalog ket " + k.ket + " has the wrong arity");
        std::size_t flat = 0;
        for (std::size_t m = 0; m < dims.size(); ++m) {
            const auto level = static_cast<std::size_t>(k.ket[m] - '0');
            if (level >= dims[m]) throw ShapeError("catalog ket " + k.ket + " exceeds dims");
            flat = flat * dims[m] + level;
        }
        // stored entries are conjugated amplitudes
        entries[flat] += std::conj(pre.value * k.weight.value);
        const std::string w = k.weight.text;
        if (body.empty()) {
            body += w;
        } else if (w.empty()) {
            body += "+";
        } else if (w == "-") {
            body += "-";
        } else {
            body += "+" + w;
        }
        body += "|" + k.ket + ">";
    }
    CatalogEntry e;
    e.name = std::move(name);
    e.dims = dims;
    e.tensor.emplace(std::move(dims), std::move(entries));
    e.source = std::string(pre.text) + "*(" + body + ")";
    return e;
}

std::vector<Printed> plain(std::initializer_list<const char*> kets) {
    std::vector<Printed> out;
    for (const char* k : kets) out.push_back({kPlus, k});
    return out;
}

Prefactor inv_sqrt(int m) {
    static const char* texts[] = {"", "1", "1/sqrt(2)", "1/sqrt(3)", "1/2", "1/sqrt(5)", "1/sqrt(6)"};
    return {1.0 / std::sqrt(static_cast<double>(m)), texts[m]};
}

Factor f2(cplx a, cplx b) { return {a, b}; }
Factor f3(cplx a, cplx b, cplx c) { return {a, b, c}; }
Factor basis_phase(std::size_t d, std::size_t level, cplx phase) {
    Factor v(d);
    v[level] = phase;
    return v;
}

} // namespace

CatalogEntry ghz(std::size_t n) {
    if (n < 2) throw InvalidArgument("ghz needs n >= 2");
    if (n > 24) throw InvalidArgument("ghz: n too large for a dense tensor");
    auto e = build("ghz:" + std::to_string(n), Dims(n, 2), inv_sqrt(2),
              {{kPlus, std::string(n, '0')}, {kPlus, std::string(n, '1')}});
    e.expected_gme = 0.7654;
    e.expected_bound = std::sqrt(2.0 - 2.0 / std::sqrt(std::pow(2.0, static_cast<double>(n - 1))));
    e.citation = n == 2 ? "Bell state; reference set I (2-qubit)" : "n-qubit GHZ state";
    return e;
}

CatalogEntry qutrit_ghz() {
    auto e = build("qutrit_ghz", {3, 3, 3}, inv_sqrt(3), plain({"000", "111", "222"}));
    e.expected_gme = 0.9194;
    e.expected_bound = 1.1547;
    e.citation = "3-qutrit GHZ state; reference set examples";
    return e;
}

CatalogEntry w3() {
    auto e = build("w3", {2, 2, 2}, inv_sqrt(3), plain({"100", "010", "001"}));
    e.expected_gme = 0.8165;
    e.expected_bound = 1.0;
    e.citation = "3-qubit W state; reference sets I (3-qubit) and III (2x2x2)";
    return e;
}

CatalogEntry dicke_qutrit() {
    auto e = build("dicke_qutrit", {3, 3, 3}, inv_sqrt(6), plain({"012", "021", "102", "120", "201", "210"}));
    e.expected_gme = 1.0282;
    e.expected_bound = 1.1547;
    e.citation = "3-qutrit symmetric Dicke state; reference set examples";
    return e;
}

CatalogEntry cluster4() {
    const Weight w1{std::polar(1.0, 2.0 * std::numbers::pi / 3.0), "exp(2i*pi/3)*"};
    const Weight w2{std::polar(1.0, 4.0 * std::numbers::pi / 3.0), "exp(4i*pi/3)*"};
    auto e = build("cluster4", {2, 2, 2, 2}, inv_sqrt(6),
                   {{kPlus, "0011"}, {kPlus, "1100"}, {w1, "0101"}, {w1, "1010"}, {w2, "0110"}, {w2, "1001"}});
    e.expected_gme = 1.0282;
    e.expected_bound = 1.1371;
    e.citation = "phased 4-qubit state; reference sets I and II (4-qubit)";
    return e;
}

CatalogEntry ame5() {
    auto e = build("ame5", {2, 2, 2, 2, 2}, {1.0 / (2.0 * std::sqrt(2.0)), "1/(2*sqrt(2))"},
                   {{kPlus, "00000"}, {kPlus, "00011"}, {kPlus, "01100"}, {kMinus, "01111"},
                    {kPlus, "11010"}, {kPlus, "11001"}, {kPlus, "10110"}, {kMinus, "10101"}});
    e.expected_gme = 1.1291;
    e.expected_bound = 1.2247;
    e.citation = "5-qubit absolutely maximally entangled state; reference set I (5-qubit)";
    return e;
}

CatalogEntry six_qubit() {
    CatalogEntry e;
    e.name = "six_qubit";
    e.dims = Dims(6, 2);
    e.expected_gme = 1.1927;
    e.expected_bound = 1.2831;
    e.citation = "6-qubit absolutely maximally entangled state; reference set I (6-qubit); amplitudes not bundled";
    return e;
}

CatalogEntry qutrit4_uniform() {
    auto e = build("qutrit4", {3, 3, 3, 3}, {1.0 / 3.0, "1/3"},
                   plain({"0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210"}));
    e.expected_gme = 1.1547;
    e.expected_bound = 1.2709;
    e.citation = "4-qutrit uniform superposition; reference set II (4-qutrit)";
    return e;
}

CatalogEntry ququart4_uniform() {
    auto e = build("ququart4", {4, 4, 4, 4}, {0.25, "1/4"},
                   plain({"0000", "0123", "0231", "0312", "1111", "1032", "1320", "1203", "2222", "2301", "2013",
                          "2130", "3333", "3210", "3102", "3021"}));
    e.expected_gme = 1.2247;
    e.expected_bound = 1.3229;
    e.citation = "4-ququart uniform superposition; reference set II (4-ququart)";
    return e;
}

CatalogEntry het223() {
    auto e = build("het223", {2, 2, 3}, inv_sqrt(6),
                   {{kPlus, "000"}, {kPlus, "110"}, {kPlus, "011"}, {kPlus, "101"}, {kPlus, "002"}, {kMinus, "112"}});
    e.expected_gme = 0.9194;
    e.expected_bound = 1.0;
    e.citation = "2x2x3 1-uniform state; reference set III (2x2x3)";
    return e;
}

CatalogEntry het233() {
    auto e = build("het233", {2, 3, 3}, inv_sqrt(6), plain({"000", "101", "012", "110", "021", "122"}));
    e.expected_gme = 0.9194;
    e.expected_bound = 1.0879;
    e.citation = "2x3x3 state; reference set III (2x3x3)";
    return e;
}

CatalogEntry het224() {
    auto e = build("het224", {2, 2, 4}, {0.5, "1/2"}, plain({"000", "011", "102", "113"}));
    e.expected_gme = 1.0;
    e.expected_bound = 1.0;
    e.citation = "2x2x4 state; reference set III (2x2x4)";
    return e;
}

CatalogEntry uniform2_3x5_2() {
    auto e = build("uniform2_3x5_2", {3, 3, 3, 3, 3, 2}, {1.0 / (3.0 * std::sqrt(2.0)), "1/(3*sqrt(2))"},
                   plain({"000000", "001121", "010220", "012011", "021210", "022101", "111110", "112201", "121000",
                          "120121", "102020", "100211", "222220", "220011", "202110", "201201", "210100", "211021"}));
    e.expected_gme = 1.2364;
    e.expected_bound = 1.3575;
    e.citation = "3x3x3x3x3x2 2-uniform state; reference set examples";
    return e;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        ghz(2),   ghz(3),       w3(),         cluster4(),   ame5(),       six_qubit(), qutrit_ghz(),
        dicke_qutrit(), qutrit4_uniform(), ququart4_uniform(), het223(), het233(), het224(), uniform2_3x5_2(),
    };
    return entries;
}

CatalogEntry lookup(std::string_view name) {
    if (name.starts_with("ghz:")) {
        const std::string digits(name.substr(4));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            digits.size() <= 3) {
            const auto n = static_cast<std::size_t>(std::stoul(digits));
            if (n >= 2 && n <= 24) return ghz(n);
        }
        throw NotFound("invalid ghz size in '" + std::string(name) + "' (use ghz:N with 2 <= N <= 24)");
    }
    std::string_view canonical = name;
    if (name == "dicke333") canonical = "dicke_qutrit";
    if (name == "uniform2-3x5x2") canonical = "uniform2_3x5_2";
    if (name == "qutrit4_uniform") canonical = "qutrit4";
    if (name == "ququart4_uniform") canonical = "ququart4";
    for (const auto& e : catalog()) {
        if (e.name == canonical) return e;
    }
    throw NotFound("unknown catalog entry '" + std::string(name) + "'");
}

namespace {

std::optional<std::vector<Factor>> printed_closest(std::string_view name) {
    using c = cplx;
    if (name == "w3") {
        const Factor phi = f2(c(-0.7885, 0.2119), c(0.4996, 0.2894));
        return std::vector<Factor>{phi, phi, phi};
    }
    if (name == "cluster4") {
        return std::vector<Factor>{f2(c(-0.3674, 0.3830), -c(0.6813, -0.5042)), f2(c(-0.9955, -0.0569), -c(0.0418, 0.0629)),
                                   f2(c(0.5210, 0.2240), -c(0.7665, -0.3013)), f2(c(0.6323, -0.0502), -c(0.3042, 0.7107))};
    }
    if (name == "ame5") {
        return std::vector<Factor>{f2(c(-0.7060, 0.5388), c(0.4556, 0.0612)), f2(c(0.3766, 0.8043), c(0.4322, 0.1566)),
                                   f2(c(0.7843, 0.4166), c(0.1346, 0.4395)), f2(c(0.5652, 0.6850), -c(0.4576, 0.0439)),
                                   f2(c(0.2449, 0.8536), c(0.2228, -0.4021))};
    }
    if (name == "qutrit_ghz") {
        const Factor e0 = f3(1.0, 0.0, 0.0);
        return std::vector<Factor>{e0, e0, e0};
    }
    if (name == "dicke_qutrit" || name == "qutrit4") {
        const Factor phi = f3(1.0, 1.0, 1.0);
        return std::vector<Factor>(name == "qutrit4" ? 4 : 3, phi);
    }
    if (name == "ququart4") {
        // -(i|0> + i|1> + |2> - |3>)/2
        const Factor phi{c(0.0, -1.0), c(0.0, -1.0), c(-1.0, 0.0), c(1.0, 0.0)};
        return std::vector<Factor>(4, phi);
    }
    if (name == "het223") {
        // third factor is printed with the label of the first
        return std::vector<Factor>{f2(c(0.2887, 0.1283), c(-0.1999, -0.9275)), f2(c(-0.0366, -0.3138), c(-0.6964, 0.6443)),
                                   f3(c(0.5420, -0.2983), c(-0.4013, -0.1367), c(-0.5, 0.4331))};
    }
    if (name == "het233") {
        return std::vector<Factor>{f2(c(0.5021, -0.4979), c(0.1802, 0.6838)),
                                   f3(c(0.5208, -0.2491), c(-0.4762, -0.3265), c(-0.04464, 0.5756)),
                                   f3(c(0.1944, 0.5437), c(0.3736, -0.4401), c(-0.5680, -0.1035))};
    }
    if (name == "het224") {
        return std::vector<Factor>{f2(c(0.0969, -0.7218), c(0.4724, -0.4964)), f2(c(0.4498, 0.0562), c(0.8197, 0.3501)),
                                   Factor{c(0.0842, 0.3192), c(0.3321, 0.5578), c(0.2404, 0.1967), c(0.5610, 0.2416)}};
    }
    if (name == "uniform2_3x5_2") {
        return std::vector<Factor>{basis_phase(3, 1, c(-0.99876, -0.0497913)), basis_phase(3, 0, c(-0.956069, -0.293143)),
                                   basis_phase(3, 0, c(0.413005, -0.910729)),  basis_phase(3, 2, c(-0.739477, 0.673182)),
                                   basis_phase(3, 1, c(-0.99998, 0.00639697)), basis_phase(2, 1, c(0.028172, 0.999603))};
    }
    return std::nullopt;
}

std::string canonical_name(std::string_view name) {
    if (name.starts_with("ghz:")) return std::string(name);
    return lookup(name).name;
}

} // namespace

bool has_published_closest(std::string_view name) {
    try {
        return printed_closest(canonical_name(name)).has_value();
    } catch (const NotFound&) {
        return false;
    }
}

ProductState published_closest_product(std::string_view name) {
    auto f = printed_closest(canonical_name(name));
    if (!f) throw NotFound("no published closest product state for '" + std::string(name) + "'");
    return ProductState::normalized(std::move(*f));
}

const std::vector<ReferenceTable>& reference_tables() {
    static const std::vector<ReferenceTable> tables = {
        {"I", "Reference set I: n-qubit systems", "n-qubit",
         {{"2-qubit", "ghz:2", 0.7654, 0.7654},
          {"3-qubit", "w3", 1.0, 0.8165},
          {"4-qubit", "cluster4", 1.1371, 1.0282},
          {"5-qubit", "ame5", 1.2247, 1.1291},
          {"6-qubit", "six_qubit", 1.2831, 1.1927}}},
        {"II", "Reference set II: 4-party systems", "4-party",
         {{"4-qubit", "cluster4", 1.1371, 1.0282},
          {"4-qutrit", "qutrit4", 1.2709, 1.1547},
          {"4-ququart", "ququart4", 1.3229, 1.2247}}},
        {"III", "Reference set III: 3-party heterogeneous systems", "3-party",
         {{"2x2x2", "w3", 1.0, 0.8165},
          {"2x2x3", "het223", 1.0, 0.9194},
          {"2x3x3", "het233", 1.0879, 0.9194},
          {"2x2x4", "het224", 1.0, 1.0}}},
        {"examples", "Other worked examples", "state",
         {{"3-qubit GHZ", "ghz:3", 1.0, 0.7654},
          {"3-qutrit GHZ", "qutrit_ghz", 1.1547, 0.9194},
          {"3-qutrit Dicke", "dicke_qutrit", 1.1547, 1.0282},
          {"3x3x3x3x3x2", "uniform2_3x5_2", 1.3575, 1.2364}}},
    };
    return tables;
}

} // namespace gme
