#include "halfline/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Solve nonlinear integral equations on the half-line by truncated Picard iteration."};
    std::string config_path;
    std::string output;
    app.add_option("config", config_path, "JSON run configuration")->required();
    app.add_option("-o,--output", output, "CSV output path (overrides the config's \"output\")");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : halfline::cli::kExitInvalid;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read config file '" << config_path << "'\n";
        return halfline::cli::kExitInvalid;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    auto parsed = halfline::cli::parse_config(buf.str());
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << config_path << ": " << e << "\n";
        return halfline::cli::kExitInvalid;
    }
    if (!output.empty()) parsed.config->output = output;

    const auto result = halfline::cli::run(*parsed.config);
    std::cout << result.summary;
    if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
    return result.exit_code;
}
