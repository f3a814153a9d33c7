// gme: geometric measure of entanglement from the command line.
//
//   gme compute <catalog-name | file.ket> [solver flags] [--json PATH]
//   gme bound <d1> <d2> ...
//   gme reproduce [I|II|III|examples|all] [solver flags] [--json PATH]
//   gme catalog list | show <name> | export <name> [-o PATH]
//
// Errors go to stderr as a single line "gme: error[<kind>]: <message>".
// Exit codes: 0 ok, 1 usage, 2 parse, 3 mismatch, 4 non-convergence,
// 5 not found, 6 numeric.

#include "gme/bounds.hpp"
#include "gme/catalog.hpp"
#include "gme/error.hpp"
#include "gme/ket.hpp"
#include "gme/kernels.hpp"
#include "gme/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using gme::ExitCode;

struct CliError {
    ExitCode code;
    std::string message;
};

int fail(ExitCode code, const std::string& message) {
    std::cerr << "gme: error[" << gme::error_tag(code) << "]: " << message << "\n";
    return static_cast<int>(code);
}

void add_solver_flags(CLI::App* cmd, gme::SolverConfig& cfg) {
    cmd->add_option("--restarts", cfg.restarts, "Random starts")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", cfg.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", cfg.alpha, "Shift added to each mode update")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", cfg.max_iters, "Sweep cap per start")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_flag("--symmetric", cfg.symmetric_mode, "Force one shared factor (symmetric tensors only)");
    cmd->add_option("--threads", cfg.threads, "Worker threads for restarts (0 = all cores)");
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{ExitCode::NotFound, "cannot write " + path};
    out << j.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{ExitCode::NotFound, "no catalog entry or readable file named '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gme::Dims parse_dims(const std::vector<std::string>& args) {
    gme::Dims dims;
    for (const auto& a : args) {
        std::string token;
        std::stringstream ss(a);
        while (std::getline(ss, token, 'x')) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || token.empty() || v < 1) throw CliError{ExitCode::Usage, "malformed dimension '" + a + "'"};
            dims.push_back(static_cast<std::size_t>(v));
        }
    }
    if (dims.empty()) throw CliError{ExitCode::Usage, "no dimensions given"};
    return dims;
}

int cmd_compute(const std::string& source, const gme::SolverConfig& cfg, const std::string& json_path, bool strict) {
    std::optional<gme::CatalogEntry> entry;
    try {
        entry = gme::lookup(source);
    } catch (const gme::NotFound&) {
        if (!std::filesystem::is_regular_file(source)) throw;
    }

    std::optional<gme::RunRecord> rec;
    if (entry) {
        if (entry->external()) {
            throw gme::NotFound("catalog entry '" + entry->name + "' has no amplitudes; supply them as a .ket file");
        }
        rec.emplace(gme::run_state(entry->name, *entry->tensor, cfg, &*entry));
    } else {
        const auto expr = gme::parse_ket(read_file(source));
        auto built = gme::to_tensor(expr, strict ? gme::NormPolicy::Strict : gme::NormPolicy::Auto);
        if (!strict && built.scale != 1.0) std::cerr << "gme: note: amplitudes rescaled by " << built.scale << "\n";
        rec.emplace(gme::run_state(source, built.tensor, cfg));
        rec->normalization_scale = built.scale;
    }
    std::cout << gme::render_text(*rec);
    if (!json_path.empty()) write_json(json_path, gme::to_json(*rec));
    if (rec->expected && !rec->expected->pass) {
        return fail(ExitCode::Mismatch, "gme differs from the reference value by " + std::to_string(rec->expected->gme_delta));
    }
    if (!rec->any_converged()) return fail(ExitCode::NonConvergence, "no start converged within --max-iters");
    return 0;
}

int cmd_bound(const std::vector<std::string>& args) {
    const auto dims = parse_dims(args);
    std::printf("%.4f\n", gme::upper_bound(dims));
    return 0;
}

int cmd_reproduce(const std::string& which, const gme::SolverConfig& cfg, const std::string& json_path) {
    const auto out = gme::reproduce(which, cfg);
    std::cout << gme::render_text(out);
    if (!json_path.empty()) write_json(json_path, gme::to_json(out));
    if (out.exit_code == ExitCode::Mismatch) return fail(ExitCode::Mismatch, "one or more rows differ from the reference values");
    if (out.exit_code == ExitCode::NonConvergence) return fail(ExitCode::NonConvergence, "one or more rows did not converge");
    return 0;
}

std::string dims_text(const gme::Dims& dims) {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? "x" : "") + std::to_string(dims[k]);
    return s;
}

int cmd_catalog(const std::string& action, const std::string& name, const std::string& out_path) {
    if (action == "list") {
        std::printf("%-16s %-12s %8s %8s  %s\n", "name", "dims", "GME", "bound", "citation");
        for (const auto& e : gme::catalog()) {
            std::printf("%-16s %-12s %8.4f %8.4f  %s%s\n", e.name.c_str(), dims_text(e.dims).c_str(), e.expected_gme.value_or(0.0),
                        e.expected_bound, e.citation.c_str(), e.external() ? " [external]" : "");
        }
        return 0;
    }
    if (name.empty()) throw CliError{ExitCode::Usage, "catalog " + action + " needs an entry name"};
    const auto e = gme::lookup(name);
    if (action == "show") {
        std::printf("name     : %s\ndims     : %s\ncitation : %s\n", e.name.c_str(), dims_text(e.dims).c_str(), e.citation.c_str());
        if (e.expected_gme) std::printf("gme      : %.4f\n", *e.expected_gme);
        std::printf("bound    : %.4f\n", e.expected_bound);
        std::printf("state    : %s\n", e.external() ? "(amplitudes not available)" : e.source.c_str());
        return 0;
    }
    if (action == "export") {
        if (e.external()) throw gme::NotFound("catalog entry '" + e.name + "' has no amplitudes to export");
        const std::string text = "# " + e.name + ": " + e.citation + "\n" + gme::render_ket(gme::from_tensor(*e.tensor));
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw CliError{ExitCode::NotFound, "cannot write " + out_path};
            out << text;
        }
        return 0;
    }
    throw CliError{ExitCode::Usage, "unknown catalog action '" + action + "' (use list, show or export)"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric measure of entanglement of multipartite pure states"};
    app.require_subcommand(1);
    std::string kernel_name;
    app.add_option("--kernels", kernel_name, "Force arithmetic kernels (scalar, avx2)");

    gme::SolverConfig cfg;
    std::string json_path;

    auto* compute = app.add_subcommand("compute", "GME of a catalog state or a .ket file");
    std::string source;
    bool strict = false;
    compute->add_option("source", source, "Catalog name or path to a .ket file")->required();
    compute->add_flag("--strict-norm", strict, "Reject states whose norm is not 1 instead of rescaling");
    compute->add_option("--json", json_path, "Write a JSON run record");
    add_solver_flags(compute, cfg);

    auto* bound = app.add_subcommand("bound", "Dimension-only upper bound on the GME");
    std::vector<std::string> dim_args;
    bound->add_option("dims", dim_args, "Subsystem dimensions (e.g. 2 3 3 or 2x3x3)")->required();

    auto* repro = app.add_subcommand("reproduce", "Recompute the reference tables");
    std::string which = "all";
    repro->add_option("table", which, "I, II, III, examples or all");
    repro->add_option("--json", json_path, "Write a JSON report");
    add_solver_flags(repro, cfg);

    auto* cat = app.add_subcommand("catalog", "List, show or export catalog states");
    std::string action, entry_name, out_path;
    cat->add_option("action", action, "list | show | export")->required();
    cat->add_option("name", entry_name, "Catalog entry");
    cat->add_option("-o,--output", out_path, "Export destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(ExitCode::Usage, e.what());
    }

    try {
        if (!kernel_name.empty() && !gme::kernels::select(kernel_name)) {
            return fail(ExitCode::Usage, "kernels '" + kernel_name + "' not available on this machine");
        }
        if (*compute) return cmd_compute(source, cfg, json_path, strict);
        if (*bound) return cmd_bound(dim_args);
        if (*repro) return cmd_reproduce(which, cfg, json_path);
        if (*cat) return cmd_catalog(action, entry_name, out_path);
    } catch (const CliError& e) {
        return fail(e.code, e.message);
    } catch (const gme::ParseError& e) {
        return fail(ExitCode::Parse, e.what());
    } catch (const gme::NotFound& e) {
        return fail(ExitCode::NotFound, e.what());
    } catch (const gme::InvalidArgument& e) {
        return fail(ExitCode::Usage, e.what());
    } catch (const gme::ShapeError& e) {
        return fail(ExitCode::Usage, e.what());
    } catch (const gme::Error& e) {
        return fail(ExitCode::Numeric, e.what());
    } catch (const std::exception& e) {
        return fail(ExitCode::Numeric, e.what());
    }
    return fail(ExitCode::Usage, "no command given");
}
