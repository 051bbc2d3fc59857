#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "parityforge/codes.hpp"
#include "parityforge/layout.hpp"
#include "parityforge/noise.hpp"

int main(int argc, char** argv) {
    CLI::App app{"parityforge: parity-unfolded magic-state factories, simulation and costing"};
    app.require_subcommand(1);

    int exit_code = 0;
    pf::cli::register_commands(app, exit_code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    } catch (const pf::InvalidParameter& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const pf::ConstructionFailure& e) {
        std::cerr << "construction failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
