#ifndef TDK_CLI_HPP
#define TDK_CLI_HPP

#include <functional>
#include <string>
#include <vector>

namespace tdk {

/// Returns the contents of a named input; throws InputError if unreadable.
using FileReader = std::function<std::string(const std::string&)>;

/// Reads from disk, falling back to the embedded fixture of the same
/// base name when no such file exists.
std::string read_input_file(const std::string& path);

struct CliResult {
    int exit_code = 0;  ///< 0 success/true, 1 negative result, 2 input error
    std::string out;    ///< report document (JSON unless a help text)
    std::string err;    ///< one-line diagnostic for exit code 2
};

/**
 * Runs one command. `args` excludes the program name, e.g.
 * {"dualizable", "--pair", "hopf_k2.json"}. Never throws.
 */
CliResult run_cli(const std::vector<std::string>& args, const FileReader& reader = read_input_file);

}  // namespace tdk

#endif
