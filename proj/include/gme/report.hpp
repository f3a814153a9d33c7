#pragma once

// Run records, JSON reports and the table reproduction driver behind the CLI.

#include "gme/bounds.hpp"
#include "gme/catalog.hpp"
#include "gme/solver.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gme {

enum class ExitCode : int {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Mismatch = 3,
    NonConvergence = 4,
    NotFound = 5,
    Numeric = 6,
};

const char* error_tag(ExitCode code);

/// Reported GME must match within this; closed-form bounds within kBoundTolerance.
inline constexpr double kGmeTolerance = 1e-3;
inline constexpr double kBoundTolerance = 5e-5;

struct Expectation {
    double gme;
    double bound;
    double gme_delta;   ///< computed - expected
    double bound_delta; ///< computed - expected
    bool pass;
};

struct RunRecord {
    std::string input;
    Dims dims;
    SolverConfig config;
    std::string kernels;
    std::optional<double> normalization_scale;
    GmeReport report;
    std::vector<int> iterations;
    std::vector<bool> converged;
    std::size_t best_start = 0;
    std::optional<Expectation> expected;
    double wall_seconds = 0.0; ///< text output only; kept out of JSON

    bool any_converged() const;
};

/// Solve `t` and assemble the record. `reference` supplies optional expectations.
RunRecord run_state(const std::string& input, const StateTensor& t, const SolverConfig& cfg,
                    const CatalogEntry* reference = nullptr);

nlohmann::json to_json(const RunRecord& r);
std::string render_text(const RunRecord& r);

struct RowOutcome {
    std::string table;
    TableRow row;
    double computed_bound;
    bool skipped = false;
    std::optional<RunRecord> run;
    bool pass = false;
};

struct ReproduceOutcome {
    std::string which;
    SolverConfig config;
    std::vector<RowOutcome> rows;
    ExitCode exit_code = ExitCode::Ok;
};

/// which: "I", "II", "III", "examples" or "all". Throws InvalidArgument on an
/// unknown table id.
ReproduceOutcome reproduce(const std::string& which, const SolverConfig& cfg);

nlohmann::json to_json(const ReproduceOutcome& r);
std::string render_text(const ReproduceOutcome& r);

/// Solver settings that determine the output bits.
nlohmann::json config_json(const SolverConfig& cfg);

} // namespace gme
