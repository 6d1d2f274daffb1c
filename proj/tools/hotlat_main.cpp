#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "hotlat/commands.hpp"
#include "hotlat/errors.hpp"
#include "hotlat/version.hpp"

namespace {

struct Cli {
    std::string config;
    std::string out = ".";
    unsigned workers = 0;
    std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--config", cli.config, "JSON run configuration")->required();
    cmd->add_option("--out", cli.out, "output directory (default: current directory)");
    cmd->add_option("--workers", cli.workers, "worker threads, 0 = all cores");
    cmd->add_option("--format", cli.formats,
                    "output formats: csv, json, pgm (repeatable; default csv and json)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(hotlat::kToolName) + " " + hotlat::kToolVersion +
                 ": higher-order topological states in modulated lattices"};
    app.require_subcommand(1);

    Cli cli;
    CLI::App* spectrum = app.add_subcommand("spectrum", "sweep each axis spectrum over phi");
    CLI::App* dos = app.add_subcommand("dos", "density of states of the axes and the lattice");
    CLI::App* chern = app.add_subcommand("chern", "abelian or vector Chern numbers per axis");
    CLI::App* assemble =
        app.add_subcommand("assemble", "build corner/hinge/surface product eigenstates");
    CLI::App* evolve =
        app.add_subcommand("evolve", "propagate site excitations and report localization");
    for (CLI::App* cmd : {spectrum, dos, chern, assemble, evolve}) add_common(cmd, cli);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        hotlat::RunConfig cfg = hotlat::load_config_file(cli.config);
        hotlat::RunOptions opts;
        opts.out_dir = cli.out;
        if (!cli.formats.empty()) opts.formats = cli.formats;
        opts.workers = cli.workers;

        hotlat::Json manifest;
        if (spectrum->parsed())
            manifest = hotlat::run_spectrum(cfg, opts);
        else if (dos->parsed())
            manifest = hotlat::run_dos(cfg, opts);
        else if (chern->parsed())
            manifest = hotlat::run_chern(cfg, opts);
        else if (assemble->parsed())
            manifest = hotlat::run_assemble(cfg, opts);
        else
            manifest = hotlat::run_evolve(cfg, opts);

        for (const auto& w : manifest["warnings"])
            std::cerr << "warning: " << w.get<std::string>() << "\n";
        std::cout << manifest["command"].get<std::string>() << ": wrote "
                  << manifest["files"].size() << " files and manifest.json to " << cli.out
                  << "\n";
        return 0;
    } catch (const hotlat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hotlat::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const hotlat::NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hotlat::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
