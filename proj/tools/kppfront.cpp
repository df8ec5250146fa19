#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpp/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "kppfront: spreading speeds, asymmetry index, traveling sub/super-solution "
        "certificates and direct simulation for nonlocal dispersal Fisher-KPP fronts"};

    std::string config_path;
    std::vector<std::string> overrides;
    std::string outdir;
    app.add_option("config", config_path, "config file (INI, [command] picks the run)")
        ->required();
    app.add_option("--set", overrides, "override a config field: section.key=value");
    app.add_option("--output", outdir, "output directory (overrides [output] dir)");

    CLI11_PARSE(app, argc, argv);
    return kpp::cli::execute(config_path, overrides, outdir, std::cout, std::cerr);
}
