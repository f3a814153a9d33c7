#include "gme/report.hpp"

#include "gme/error.hpp"
#include "gme/kernels.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>

namespace gme {

const char* error_tag(ExitCode code) {
    switch (code) {
    case ExitCode::Ok: return "ok";
    case ExitCode::Usage: return "usage";
    case ExitCode::Parse: return "parse";
    case ExitCode::Mismatch: return "mismatch";
    case ExitCode::NonConvergence: return "nonconvergence";
    case ExitCode::NotFound: return "not-found";
    case ExitCode::Numeric: return "numeric";
    }
    return "unknown";
}

bool RunRecord::any_converged() const {
    for (bool c : converged) {
        if (c) return true;
    }
    return false;
}

RunRecord run_state(const std::string& input, const StateTensor& t, const SolverConfig& cfg, const CatalogEntry* reference) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res = solve(t, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord r{.input = input,
                .dims = t.dims(),
                .config = cfg,
                .kernels = std::string(kernels::active().name),
                .normalization_scale = std::nullopt,
                .report = make_gme_report(t.dims(), res.sigma, std::move(*res.closest)),
                .iterations = std::move(res.iterations),
                .converged = std::move(res.converged),
                .best_start = res.best_start,
                .expected = std::nullopt,
                .wall_seconds = std::chrono::duration<double>(t1 - t0).count()};
    if (reference != nullptr && reference->expected_gme) {
        Expectation e{};
        e.gme = *reference->expected_gme;
        e.bound = reference->expected_bound;
        e.gme_delta = r.report.gme - e.gme;
        e.bound_delta = r.report.bound - e.bound;
        e.pass = std::abs(e.gme_delta) <= kGmeTolerance && std::abs(e.bound_delta) <= kBoundTolerance;
        r.expected = e;
    }
    return r;
}

nlohmann::json config_json(const SolverConfig& cfg) {
    return {{"alpha", cfg.alpha},     {"tol", cfg.tol},           {"max_iters", cfg.max_iters},
            {"restarts", cfg.restarts}, {"seed", cfg.seed},         {"symmetric", cfg.symmetric_mode},
            {"kernels", std::string(kernels::active().name)}};
}

namespace {

nlohmann::json factors_json(const ProductState& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : p.factors()) {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& c : f) v.push_back({c.real(), c.imag()});
        out.push_back(v);
    }
    return out;
}

std::string dims_text(const Dims& dims, const char* sep = " ") {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? sep : "") + std::to_string(dims[k]);
    return s;
}

std::string complex_text(cplx c) { return fmt::format("{:+.6f}{:+.6f}i", c.real(), c.imag()); }

} // namespace

nlohmann::json to_json(const RunRecord& r) {
    nlohmann::json j;
    j["version"] = "1";
    j["input"] = r.input;
    j["dims"] = r.dims;
    j["config"] = config_json(r.config);
    j["config"]["kernels"] = r.kernels;
    if (r.normalization_scale) j["normalization_scale"] = *r.normalization_scale;
    j["result"] = {
        {"sigma", r.report.sigma},
        {"gme", r.report.gme},
        {"bound", r.report.bound},
        {"slack", r.report.slack},
        {"closest", factors_json(r.report.closest)},
        {"iterations", r.iterations},
        {"converged", r.converged},
        {"best_start", r.best_start},
        {"any_converged", r.any_converged()},
    };
    if (r.expected) {
        j["expected"] = {{"gme", r.expected->gme},
                         {"bound", r.expected->bound},
                         {"gme_delta", r.expected->gme_delta},
                         {"bound_delta", r.expected->bound_delta},
                         {"pass", r.expected->pass}};
    } else {
        j["expected"] = nullptr;
    }
    return j;
}

std::string render_text(const RunRecord& r) {
    std::string out;
    out += fmt::format("input      : {}\n", r.input);
    out += fmt::format("dims       : {}\n", dims_text(r.dims));
    if (r.normalization_scale) out += fmt::format("normalized : scale {:.12g}\n", *r.normalization_scale);
    out += fmt::format("sigma      : {:.4f}\n", r.report.sigma);
    out += fmt::format("gme        : {:.4f}\n", r.report.gme);
    out += fmt::format("bound      : {:.4f}\n", r.report.bound);
    out += fmt::format("slack      : {:.4f}\n", r.report.slack);
    out += "closest    :\n";
    const auto factors = r.report.closest.factors();
    for (std::size_t k = 0; k < factors.size(); ++k) {
        std::string comps;
        for (const auto& c : factors[k]) comps += " " + complex_text(c);
        out += fmt::format("  mode {}   :{}\n", k + 1, comps);
    }
    int converged = 0;
    for (bool c : r.converged) converged += c ? 1 : 0;
    out += fmt::format("iterations : {} sweeps (best start {}), {}/{} starts converged\n", r.iterations[r.best_start],
                       r.best_start, converged, r.converged.size());
    out += fmt::format("config     : restarts {} seed {} tol {:g} alpha {:g} max-iters {}{} kernels {}\n",
                       r.config.restarts, r.config.seed, r.config.tol, r.config.alpha, r.config.max_iters,
                       r.config.symmetric_mode ? " symmetric" : "", r.kernels);
    if (r.expected) {
        out += fmt::format("expected   : gme {:.4f} (delta {:+.4f}), bound {:.4f} (delta {:+.1e})  {}\n", r.expected->gme,
                           r.expected->gme_delta, r.expected->bound, r.expected->bound_delta,
                           r.expected->pass ? "PASS" : "FAIL");
    }
    out += fmt::format("wall time  : {:.3f} s\n", r.wall_seconds);
    return out;
}

ReproduceOutcome reproduce(const std::string& which, const SolverConfig& cfg) {
    const auto& tables = reference_tables();
    const bool all = which == "all";
    bool matched = all;
    ReproduceOutcome out;
    out.which = which;
    out.config = cfg;
    bool mismatch = false;
    bool nonconverged = false;
    for (const auto& table : tables) {
        if (!all && table.id != which) continue;
        matched = true;
        for (const auto& row : table.rows) {
            const CatalogEntry entry = lookup(row.entry);
            RowOutcome o{.table = table.id, .row = row, .computed_bound = upper_bound(entry.dims), .skipped = false, .run = std::nullopt, .pass = false};
            const bool bound_ok = std::abs(o.computed_bound - row.reported_bound) <= kBoundTolerance;
            if (entry.external()) {
                o.skipped = true;
                o.pass = bound_ok;
            } else {
                o.run = run_state(entry.name, *entry.tensor, cfg, &entry);
                const double delta = o.run->report.gme - row.reported_gme;
                o.pass = bound_ok && std::abs(delta) <= kGmeTolerance;
                nonconverged = nonconverged || !o.run->any_converged();
            }
            mismatch = mismatch || !o.pass;
            out.rows.push_back(std::move(o));
        }
    }
    if (!matched) throw InvalidArgument("unknown table '" + which + "' (use I, II, III, examples or all)");
    out.exit_code = mismatch ? ExitCode::Mismatch : nonconverged ? ExitCode::NonConvergence : ExitCode::Ok;
    return out;
}

nlohmann::json to_json(const ReproduceOutcome& r) {
    nlohmann::json j;
    j["version"] = "1";
    j["command"] = "reproduce";
    j["table"] = r.which;
    j["config"] = config_json(r.config);
    nlohmann::json rows = nlohmann::json::array();
    int failed = 0, skipped = 0;
    for (const auto& o : r.rows) {
        nlohmann::json row;
        row["table"] = o.table;
        row["label"] = o.row.label;
        row["entry"] = o.row.entry;
        row["reported_bound"] = o.row.reported_bound;
        row["reported_gme"] = o.row.reported_gme;
        row["computed_bound"] = o.computed_bound;
        row["skipped"] = o.skipped;
        row["pass"] = o.pass;
        row["run"] = o.run ? to_json(*o.run) : nlohmann::json(nullptr);
        rows.push_back(row);
        failed += o.pass ? 0 : 1;
        skipped += o.skipped ? 1 : 0;
    }
    j["rows"] = rows;
    j["summary"] = {{"rows", r.rows.size()}, {"failed", failed}, {"skipped", skipped}, {"exit_code", static_cast<int>(r.exit_code)}};
    return j;
}

std::string render_text(const ReproduceOutcome& r) {
    std::string out;
    std::string current;
    for (const auto& o : r.rows) {
        if (o.table != current) {
            current = o.table;
            for (const auto& t : reference_tables()) {
                if (t.id == current) {
                    out += fmt::format("{}{}\n", out.empty() ? "" : "\n", t.title);
                    out += fmt::format("  {:<16} {:>12} {:>12} {:>10} {:>10} {:>9}  {}\n", t.header, "bound(ref)",
                                       "bound(calc)", "GME(ref)", "GME(calc)", "delta", "status");
                }
            }
        }
        if (o.skipped) {
            out += fmt::format("  {:<16} {:>12.4f} {:>12.4f} {:>10.4f} {:>10} {:>9}  {}\n", o.row.label, o.row.reported_bound,
                               o.computed_bound, o.row.reported_gme, "-", "-",
                               o.pass ? "SKIPPED (no amplitudes available)" : "FAIL (bound)");
            continue;
        }
        const double gme = o.run->report.gme;
        std::string status = o.pass ? "PASS" : "FAIL";
        if (!o.run->any_converged()) status += " (not converged)";
        out += fmt::format("  {:<16} {:>12.4f} {:>12.4f} {:>10.4f} {:>10.4f} {:>+9.4f}  {}\n", o.row.label,
                           o.row.reported_bound, o.computed_bound, o.row.reported_gme, gme, gme - o.row.reported_gme, status);
    }
    int failed = 0;
    for (const auto& o : r.rows) failed += o.pass ? 0 : 1;
    out += fmt::format("\n{} rows, {} failed\n", r.rows.size(), failed);
    return out;
}

} // namespace gme
