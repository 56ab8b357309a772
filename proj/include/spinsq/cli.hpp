#ifndef SPINSQ_CLI_HPP
#define SPINSQ_CLI_HPP

// command-line front end; run() is the whole program, testable in-process

#include <ostream>
#include <string>
#include <vector>

#include "spinsq/fock.hpp"

namespace spinsq::cli {

struct RunConfig {
    enum class Command { algebra_report, squeeze, sweep };

    Command command = Command::squeeze;
    int n_particles = 100;
    std::vector<int> n_list;
    Spinor spinor;
    int squeeze_type = 1;
    bool auto_window = true;        // chi-t window from the N^(-2/3) default
    double chi_t_min = 0.0;
    double chi_t_max = 0.0;
    int points = 200;
    std::string output_path;        // empty writes the document to stdout
    std::string format;             // "json" or "csv"
    unsigned seed = 0;
};

// spinor syntax `re[:im],re[:im],re[:im]`; throws Error on malformed input
Spinor parse_spinor(const std::string& text);

// exit codes: 0 success, 1 invariant failure, 2 runtime failure, 3 usage error
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spinsq::cli

#endif
