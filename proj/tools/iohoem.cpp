#include "iohoem/config.hpp"
#include "iohoem/emit.hpp"
#include "iohoem/errors.hpp"
#include "iohoem/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace iohoem;

namespace {

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_SOLVER = 3;
constexpr int EXIT_TOLERANCE = 4;

int run(const std::string& config_path, const std::string& out_opt, const std::string& format_opt,
        std::optional<int> nmax, std::optional<std::uint64_t> seed)
{
    RunConfig cfg;
    try {
        cfg = parse_config(config_path);
        if (nmax)
            cfg.bath.nmax = *nmax;
        if (seed)
            cfg.seed = *seed;
        if (!format_opt.empty())
            cfg.format = format_opt;
        if (!out_opt.empty())
            cfg.out = out_opt;
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (e.line() > 0)
            std::cerr << " (line " << e.line() << ")";
        std::cerr << ": " << e.what() << "\n";
        return EXIT_CONFIG;
    }

    ScenarioResult res;
    try {
        res = run_scenario(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return EXIT_SOLVER;
    }

    try {
        if (cfg.out.empty()) {
            if (cfg.format == "csv")
                write_csv(res.table, std::cout);
            else
                write_json(res.table, std::cout);
        } else {
            emit(res.table, cfg.out, cfg.format);
        }
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }

    if (!res.within_tolerance) {
        std::cerr << "oracle comparison outside tolerance: error " << res.table.meta("error_metric") << " > "
                  << res.table.meta("tolerance") << "\n";
        return EXIT_TOLERANCE;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Input-output hierarchical equations of motion"};
    app.require_subcommand(1);

    std::string config_path, out, format;
    std::optional<int> nmax;
    std::optional<std::uint64_t> seed;
    auto* run_cmd = app.add_subcommand("run", "Run the scenario described by a config file");
    run_cmd->add_option("config", config_path, "Config file (INI)")->required();
    run_cmd->add_option("--out", out, "Output path (stdout when omitted)");
    run_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--nmax", nmax, "Override the hierarchy depth")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--seed", seed, "Seed recorded in the metadata");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_CONFIG;
    }
    return run(config_path, out, format, nmax, seed);
}
