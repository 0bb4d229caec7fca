#ifndef TREEMBED_CLI_HPP
#define TREEMBED_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace treembed::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string command;  // diary, embed or proj
    std::uint64_t seed = 1;
    std::size_t radius = 5;
    std::size_t pairs = 10000;
    std::optional<std::size_t> kappa;
    std::vector<std::size_t> big_k;  // empty: max(2, 4 theta + 1)
    std::string out;                 // empty: standard output
    std::string instance;            // JSON file
    std::vector<std::string> checks;
    std::vector<std::string> sentences;
};

/// Runs one command. `args` excludes the program name. Never throws: errors
/// are written to `err` and mapped to the exit codes above.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The commands, for callers that already hold a RunConfig.
int cmd_diary(const RunConfig& cfg, std::ostream& out);
int cmd_embed(const RunConfig& cfg, std::ostream& out);
int cmd_proj(const RunConfig& cfg, std::ostream& out);

}  // namespace treembed::cli

#endif  // TREEMBED_CLI_HPP
