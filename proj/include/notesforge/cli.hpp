#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace notesforge {

// Flat key=value config with dotted stage prefixes (embedding.dim=100).
// Command-line flags override file values.
std::map<std::string, std::string> parse_kv_config(const std::string& path);

// Full command-line surface. Returns the process exit code: 0 success,
// 1 usage, 2 missing input, 3 schema violation. Errors are emitted as a
// single JSON object on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace notesforge
