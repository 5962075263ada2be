#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etakit/io.hpp"
#include "etakit/metric.hpp"

namespace etakit::cli {

enum class Command { verify, solve, chain, perturb, quasi, weyl, example };
enum class OutputFormat { json, text };
enum class Status { pass, fail, input_error };

const char* to_string(Command c);
const char* to_string(Status s);

struct RunConfig {
    Command command = Command::verify;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::json;

    std::string hamiltonian_path;
    std::string eta_path;

    // solve
    bool want_positive = false;

    // chain
    int k_max = 4;
    bool normalize = true;
    bool shift = false;

    // perturb
    std::string k_path;           // empty: K = f(eta)
    std::string poly = "0,1";
    bool allow_hermitian = false;

    // quasi
    std::string phi_path;
    std::string psi_path;
    bool allow_indefinite = false;

    // weyl
    std::string spec_path;
    std::optional<double> theta;
    bool float_coefficients = false;

    // example
    std::string example_name;     // "two-point" | "oscillator"
    std::string x = "0+1i";
    std::string y = "0";
    std::optional<double> omega;
    std::string prefix;           // output file prefix; defaults to example_name
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation = "<=";  // how value is compared to threshold
};

struct Report {
    std::string command;
    io::Json inputs = io::Json::object();
    io::Json results = io::Json::object();
    std::vector<Check> checks;
    Status status = Status::pass;
    std::string error;            // set for input_error only

    io::Json to_json() const;
    std::string to_text() const;
};

/// Executes one command. Never throws: input problems become
/// Status::input_error with the message in `error`.
Report run(const RunConfig& config);

/// 0 = pass, 1 = a mathematical check failed, 2 = input error.
int exit_code(Status s);

/// Renders a report in the configured format (trailing newline included).
std::string render(const Report& report, OutputFormat format);

/// Full command-line entry point: parses `args` (without the program name),
/// runs, writes the report to --out or `out`, returns the exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etakit::cli
