// Command-line and config-file handling for the sweep tool.
//
// Sources merge in a fixed order: config file first (--config PATH,
// `key = value` lines, # comments), then flags, flags winning key by key.
// Keys ending in _hz are folded into their rad/s twins immediately after
// the merge, so downstream code sees SI angular frequencies only.
// Unknown keys, malformed numbers and missing required keys each get their
// own error message; all of them exit with status 2.

#include "chirptrap/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chirptrap/errors.hpp"

namespace chirptrap::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

const std::set<std::string>& numeric_keys() {
    static const std::set<std::string> keys = {
        "n",     "nu",    "nu_hz",     "kappa", "delta_min",
        "delta_max", "steps", "rabi",  "rabi_hz",   "eta",
        "t0",    "t_stop", "y_t",      "n_max",
    };
    return keys;
}

const std::set<std::string>& command_names() {
    static const std::set<std::string> names = {
        "modes", "scan", "fig3", "ratio", "oracle-check",
    };
    return names;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw config_error("malformed number for key '" + key + "': empty");
    }
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
        throw config_error("malformed number for key '" + key + "': '" + t + "'");
    }
    if (std::isnan(v)) {
        throw config_error("malformed number for key '" + key + "': NaN");
    }
    return v;
}

std::string kebab_to_snake(std::string s) {
    for (auto& c : s) {
        if (c == '-') c = '_';
    }
    return s;
}

struct FileSettings {
    std::string command;
    std::string out;
    std::map<std::string, double> values;
};

FileSettings parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file '" + path + "'");
    }
    FileSettings fs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("malformed config line " + std::to_string(line_no) +
                               " (expected key = value): '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("malformed config line " + std::to_string(line_no) +
                               ": empty key");
        }
        if (key == "command") {
            if (!command_names().count(value)) {
                throw config_error("unknown command '" + value + "' in config file");
            }
            fs.command = value;
        } else if (key == "out") {
            fs.out = value;
        } else if (numeric_keys().count(key)) {
            fs.values[key] = parse_number(value, key);
        } else {
            throw config_error("unknown config key '" + key + "'");
        }
    }
    return fs;
}

// Fold key_hz (plain Hz) into key (rad/s); both present is ambiguous.
void fold_hz(std::map<std::string, double>& values, const std::string& base) {
    const std::string hz = base + "_hz";
    const auto it = values.find(hz);
    if (it == values.end()) return;
    if (values.count(base)) {
        throw config_error("conflicting keys '" + base + "' and '" + hz + "'");
    }
    values[base] = kTwoPi * it->second;
    values.erase(hz);
}

} // namespace

bool RunConfig::has(const std::string& key) const {
    return values.count(key) != 0;
}

double RunConfig::get(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) {
        throw config_error("missing required key: " + key);
    }
    return it->second;
}

double RunConfig::get_or(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

int RunConfig::get_int(const std::string& key) const {
    const double v = get(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw config_error("key '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
}

int RunConfig::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    std::string command;
    std::string config_path;
    std::string out_flag;
    std::map<std::string, double> flag_values;

    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& tok = args[i];
        if (tok.rfind("--", 0) == 0) {
            const std::string name = kebab_to_snake(tok.substr(2));
            if (name == "help") {
                RunConfig help;
                help.command = "help";
                return help;
            }
            if (i + 1 >= args.size()) {
                throw config_error("flag " + tok + " needs a value");
            }
            const std::string value = args[++i];
            if (name == "config") {
                if (!config_path.empty()) {
                    throw config_error("duplicate --config flag");
                }
                config_path = value;
            } else if (name == "out") {
                out_flag = value;
            } else if (numeric_keys().count(name)) {
                flag_values[name] = parse_number(value, name);
            } else {
                throw config_error("unknown flag " + tok);
            }
        } else {
            if (!command.empty()) {
                throw config_error("unexpected extra argument '" + tok + "'");
            }
            if (!command_names().count(tok)) {
                throw config_error("unknown command '" + tok + "'");
            }
            command = tok;
        }
    }

    RunConfig config;
    if (!config_path.empty()) {
        FileSettings fs = parse_file(config_path);
        config.values = fs.values;
        config.out_path = fs.out;
        config.command = fs.command;
    }
    for (const auto& [key, value] : flag_values) {
        config.values[key] = value; // flags override the file
    }
    if (!out_flag.empty()) config.out_path = out_flag;
    if (!command.empty()) config.command = command;
    if (config.command.empty()) {
        throw config_error("no command given (expected one of: modes, scan, "
                           "fig3, ratio, oracle-check)");
    }
    fold_hz(config.values, "nu");
    fold_hz(config.values, "rabi");
    return config;
}

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const RunConfig config = parse_config(args);
        if (config.command == "help") {
            std::cout <<
                "usage: chirptrap COMMAND [--flag value ...] [--config FILE]\n"
                "\n"
                "commands:\n"
                "  modes         ion-chain normal modes (requires --n)\n"
                "  scan          sideband spectrum vs detuning (requires --nu,\n"
                "                --kappa, --delta-min, --delta-max, --steps,\n"
                "                --rabi, --eta)\n"
                "  fig3          finite-window vs thermal response curves\n"
                "  ratio         red/blue sideband ratio (requires --nu, --kappa)\n"
                "  oracle-check  closed form vs double integral vs Schroedinger\n"
                "\n"
                "flags: --n --nu --nu-hz --kappa --delta-min --delta-max --steps\n"
                "       --rabi --rabi-hz --eta --t0 --t-stop --y-t --n-max\n"
                "       --out FILE --config FILE\n"
                "Frequencies are rad/s; the -hz variants take plain Hz.\n"
                "Config files hold `key = value` lines with # comments; flags win.\n";
            return 0;
        }
        std::ofstream file_out;
        if (!config.out_path.empty()) {
            file_out.open(config.out_path);
            if (!file_out) {
                throw config_error("cannot open output file '" +
                                   config.out_path + "'");
            }
        }
        std::ostream& out = config.out_path.empty() ? std::cout : file_out;
        run(config, out);
        out.flush();
        if (!config.out_path.empty() && !file_out) {
            std::cerr << "error: failed writing output file\n";
            return 2;
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << " (estimate "
                  << e.estimate() << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace chirptrap::cli
