#include "bethe_cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace bethe::cli;

struct Options {
    std::string config;
    std::string out;
    std::string report;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::optional<double> s;
    std::optional<double> tol_newton;
    std::optional<double> tol_dedup;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "problem file (JSON)")->required();
    cmd->add_option("--out", o.out, "write the full JSON report here");
    cmd->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--s", o.s, "homotopy start scale");
    cmd->add_option("--tol-newton", o.tol_newton, "Newton residual tolerance");
    cmd->add_option("--tol-dedup", o.tol_dedup, "orbit merge tolerance");
}

Overrides overrides(const Options& o) {
    Overrides ov;
    if (!o.mode.empty()) ov.mode = o.mode == "exact" ? Mode::Exact : Mode::Float;
    ov.seed = o.seed;
    ov.s = o.s;
    ov.tol_newton = o.tol_newton;
    ov.tol_dedup = o.tol_dedup;
    return ov;
}

RunReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open report " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_report(ss.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical points of master functions, Bethe vectors and polynomial Fuchsian equations"};
    app.require_subcommand(1);
    Options opts;
    auto* count = app.add_subcommand("count", "representation-theoretic counts and the regime");
    auto* solve = app.add_subcommand("solve", "all isolated critical orbits");
    auto* verify = app.add_subcommand("verify", "Bethe vector and Fuchsian checks on every orbit");
    auto* lines = app.add_subcommand("lines", "critical lines in the dual regime");
    for (auto* cmd : {count, solve, verify, lines}) add_common(cmd, opts);
    verify->add_option("--report", opts.report, "verify the orbits of an earlier solve report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto cfg = load_config(opts.config, overrides(opts));
        CommandResult result;
        if (count->parsed())
            result = run_count(cfg);
        else if (solve->parsed())
            result = run_solve(cfg);
        else if (verify->parsed())
            result = run_verify(cfg, opts.report.empty() ? std::nullopt : std::optional(read_report(opts.report)));
        else
            result = run_lines(cfg);

        if (!opts.out.empty()) {
            std::ofstream out(opts.out, std::ios::binary);
            if (!out) throw ConfigError("cannot write report to " + opts.out);
            out << serialize(result.report);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << result.summary << "\nwall time: " << secs << " s\n";
        return result.report.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
