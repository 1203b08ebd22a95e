#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hexe::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kFileError = 2,
    kParseError = 3,
    kNetworkError = 4,
};

struct CliConfig {
    std::string input;
    std::string second_input;  // analyze: processed file
    std::filesystem::path output;
    std::filesystem::path key_path;
    std::filesystem::path key_out;
    std::filesystem::path puzzle_path;
    std::filesystem::path csv_path;
    std::optional<std::uint64_t> timestamp;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> raw_offset;
    std::optional<std::uint64_t> expected_size;
    std::string mode = "plain";
    std::string name;
    std::string api_override;
    std::string gateway_override;
    std::vector<int> levels = {9, 16};
    int level = 9;
    int repetitions = 5;
    bool ipfs = false;
    bool verbose = false;
};

int cmd_keygen(const CliConfig& cfg);
int cmd_encrypt(const CliConfig& cfg);
int cmd_decrypt(const CliConfig& cfg);
int cmd_analyze(const CliConfig& cfg);
int cmd_bench(const CliConfig& cfg);
int cmd_pin(const CliConfig& cfg);
int cmd_fetch(const CliConfig& cfg);

/// Parses argv, dispatches, and converts every failure into an exit code.
int run(int argc, char** argv);

}  // namespace hexe::cli
