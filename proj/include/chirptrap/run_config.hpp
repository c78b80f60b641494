#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace chirptrap::cli {

// Parsed run settings: one command plus a flat key -> number map in SI
// units (frequencies in rad/s after *_hz keys are folded in).  Values can
// come from a config file (--config PATH, `key = value` lines, # comments)
// and from --flags; flags win.  Unknown keys, malformed numbers and
// missing required keys are rejected with distinct config_error messages.
struct RunConfig {
    std::string command;  // modes | scan | fig3 | ratio | oracle-check
    std::string out_path; // empty -> stdout
    std::map<std::string, double> values;

    bool has(const std::string& key) const;
    double get(const std::string& key) const;         // throws on absence
    double get_or(const std::string& key, double fallback) const;
    // Integer-valued keys (n, steps, n_max): rejects non-integral values.
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
};

// Parses argv-style arguments (excluding the program name).
RunConfig parse_config(const std::vector<std::string>& args);

// Formats one number for CSV output: scientific, 12 significant digits.
std::string format_sci(double v);

// Executes the configured command, writing CSV to `out`.  Throws
// config_error for bad settings, accuracy_error for numerical failures.
void run(const RunConfig& config, std::ostream& out);

// Full entry point: parse, open the output sink, run, map exceptions to
// exit codes (0 success, 2 configuration, 3 numerical accuracy).
int main_entry(int argc, char** argv);

} // namespace chirptrap::cli
