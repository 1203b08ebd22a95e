// Writes the speech-like benchmark fixtures (1 KiB, 2 KiB, 24.5 MiB, 35.2 MiB)
// into a directory for `hexe bench`.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fixtures.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate speech-like WAV fixtures"};
    std::filesystem::path dir;
    std::uint64_t seed = 2023;
    bool small_only = false;
    app.add_option("dir", dir, "Output directory")->required();
    app.add_option("--seed", seed, "Synthesis seed");
    app.add_flag("--small-only", small_only, "Only write the 1 KiB and 2 KiB files");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(dir);
    std::uint64_t index = 0;
    for (const auto& point : hexe::fixtures::table_size_points()) {
        ++index;
        if (small_only && point.bytes > 1024 * 1024) {
            continue;
        }
        const auto bytes = hexe::fixtures::speech_like_wav(point.bytes, seed + index);
        const auto path = dir / point.name;
        std::ofstream out(path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            return 2;
        }
        std::cout << path.string() << "," << bytes.size() << "\n";
    }
    return 0;
}
