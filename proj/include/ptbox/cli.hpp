#pragma once

#include <map>
#include <string>

namespace ptbox::cli {

/// Parsed invocation. `num` and `text` hold exactly the options the caller
/// provided (defaults are applied by the command implementations, so
/// presence is detectable, e.g. for the mutually exclusive box modes).
struct RunConfig {
    enum class Command { partner, deform, spectrum, box, scan, verify };

    Command command = Command::verify;
    std::map<std::string, double> num;
    std::map<std::string, std::string> text;
    bool split_parts = false;
    std::string output_path = "-";  // "-" writes to stdout
    std::string format = "csv";     // csv | json
};

/// Executes a configured command. Returns the process exit code: 0 on
/// success, 1 on validation failure, 2 on numerical failure (no convergence
/// or deformation blow-up). Failures additionally emit one machine-readable
/// JSON object {"error": kind, "message": text} on stderr.
int run(const RunConfig& config);

/// Argument parsing front end around run().
int main_entry(int argc, const char* const* argv);

}  // namespace ptbox::cli
