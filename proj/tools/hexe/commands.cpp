#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "hexe/cipher.hpp"
#include "hexe/error.hpp"
#include "hexe/ipfs.hpp"
#include "hexe/keygen.hpp"
#include "hexe/metrics.hpp"
#include "hexe/puzzle.hpp"
#include "hexe/wav.hpp"

namespace hexe::cli {

namespace {

namespace fs = std::filesystem;
using Bytes = std::vector<std::uint8_t>;

constexpr std::string_view kIpfsScheme = "ipfs://";

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileError("cannot open " + path.string());
    }
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw FileError("cannot read " + path.string());
    }
    return data;
}

std::string read_text(const fs::path& path) {
    const auto bytes = read_file(path);
    return {bytes.begin(), bytes.end()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw FileError("cannot write " + path.string());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

KeyMode parse_mode(const std::string& mode) {
    if (mode == "plain") {
        return KeyMode::Plain;
    }
    if (mode == "ipfs") {
        return KeyMode::Ipfs;
    }
    throw UsageError("--mode must be 'plain' or 'ipfs'");
}

ipfs::IpfsConfig ipfs_config(const CliConfig& cfg) {
    auto out = ipfs::config_from_environment();
    if (!cfg.api_override.empty()) {
        out.api_base_url = cfg.api_override;
    }
    if (!cfg.gateway_override.empty()) {
        out.gateway_base_url = cfg.gateway_override;
    }
    return out;
}

void log_params(const CliConfig& cfg, const SessionKey& key) {
    if (!cfg.verbose) {
        return;
    }
    const auto p = derive_params(key.timestamp, key.puzzle.size);
    std::cerr << "p=" << p.p << " k=" << p.k << " t=" << p.t << " u=" << p.u << " u1=" << p.u1 << "\n";
}

// Key for encryption: an existing .hexekey, a puzzle file plus timestamp, or a
// freshly generated puzzle.
SessionKey encryption_key(const CliConfig& cfg, bool& generated) {
    generated = false;
    if (!cfg.key_path.empty()) {
        auto key = parse_session_key(read_text(cfg.key_path));
        if (cfg.ipfs && key.mode != KeyMode::Ipfs) {
            throw UsageError("--ipfs needs a key file in ipfs mode");
        }
        return key;
    }
    const KeyMode mode = cfg.ipfs ? KeyMode::Ipfs : KeyMode::Plain;
    if (!cfg.puzzle_path.empty()) {
        SessionKey key;
        key.puzzle = parse_puzzle(read_text(cfg.puzzle_path));
        key.timestamp = cfg.timestamp ? *cfg.timestamp : current_unix_time();
        key.mode = mode;
        return key;
    }
    generated = true;
    return new_session_key(cfg.level, mode, cfg.seed, cfg.timestamp);
}

SessionKey decryption_key(const CliConfig& cfg) {
    if (!cfg.key_path.empty()) {
        return parse_session_key(read_text(cfg.key_path));
    }
    if (cfg.puzzle_path.empty() || !cfg.timestamp) {
        throw UsageError("decrypt needs --key, or --puzzle together with --timestamp");
    }
    return SessionKey{parse_puzzle(read_text(cfg.puzzle_path)), *cfg.timestamp, parse_mode(cfg.mode)};
}

Bytes apply_key(const Bytes& input, const SessionKey& key, const std::optional<std::size_t>& raw_offset) {
    if (raw_offset) {
        return cipher_raw(input, key, *raw_offset);
    }
    return write_wav(encrypt(parse_wav(input), key));
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::AuthFailed:
        case ErrorCode::ServiceUnavailable:
        case ErrorCode::PayloadTooLarge:
        case ErrorCode::NotFound:
        case ErrorCode::IntegrityMismatch:
            return kNetworkError;
        case ErrorCode::InvalidArgument:
        case ErrorCode::UnsupportedSize:
            return kUsage;
        default:
            return kParseError;
    }
}

}  // namespace

int cmd_keygen(const CliConfig& cfg) {
    const auto key = new_session_key(cfg.level, cfg.ipfs ? KeyMode::Ipfs : KeyMode::Plain, cfg.seed, cfg.timestamp);
    const auto text = serialize_session_key(key);
    log_params(cfg, key);
    if (cfg.output.empty()) {
        std::cout << text;
        return kOk;
    }
    write_text(cfg.output, text);
    std::cout << "Timestamp: " << key.timestamp << "\n"
              << "Level: " << key.puzzle.size << "\n"
              << "Key: " << cfg.output.string() << "\n";
    return kOk;
}

int cmd_encrypt(const CliConfig& cfg) {
    const fs::path in = cfg.input;
    fs::path out = cfg.output;
    if (out.empty()) {
        out = in.parent_path() / (in.stem().string() + ".enc.wav");
    }

    bool generated = false;
    const auto key = encryption_key(cfg, generated);
    log_params(cfg, key);

    const auto input = read_file(in);
    const auto encrypted = apply_key(input, key, cfg.raw_offset);
    write_file(out, encrypted);

    fs::path key_out = cfg.key_out;
    if (key_out.empty() && cfg.key_path.empty()) {
        key_out = fs::path(out).replace_extension(".hexekey");
    }
    if (!key_out.empty()) {
        write_text(key_out, serialize_session_key(key));
    }

    std::cout << "Timestamp: " << key.timestamp << "\n"
              << "Level: " << key.puzzle.size << "\n"
              << "Mode: " << to_string(key.mode) << "\n"
              << "Output: " << out.string() << "\n";
    if (!key_out.empty()) {
        std::cout << "Key: " << key_out.string() << "\n";
    }

    if (cfg.ipfs) {
        const auto receipt = ipfs::pin_path(ipfs_config(cfg), out, out.filename().string());
        std::cout << "CID: " << receipt.cid << "\n"
                  << "Gateway: " << receipt.gateway_url << "\n";
    }
    return kOk;
}

int cmd_decrypt(const CliConfig& cfg) {
    const auto key = decryption_key(cfg);
    log_params(cfg, key);

    Bytes input;
    fs::path out = cfg.output;
    if (cfg.input.starts_with(kIpfsScheme)) {
        const std::string cid = cfg.input.substr(kIpfsScheme.size());
        input = ipfs::fetch_cid(ipfs_config(cfg), cid, cfg.expected_size);
        if (out.empty()) {
            out = cid + ".dec.wav";
        }
    } else {
        const fs::path in = cfg.input;
        input = read_file(in);
        if (out.empty()) {
            out = in.parent_path() / (in.stem().string() + ".dec.wav");
        }
    }

    const auto decrypted = apply_key(input, key, cfg.raw_offset);
    write_file(out, decrypted);
    std::cerr << "note: decryption is unauthenticated; a wrong key produces distorted audio, not an error\n";
    std::cout << "Output: " << out.string() << "\n";
    return kOk;
}

int cmd_analyze(const CliConfig& cfg) {
    const auto reference = parse_wav(read_file(cfg.input));
    const auto processed_bytes = read_file(cfg.second_input);
    const auto processed = parse_wav(processed_bytes);

    auto report = analyze(reference, processed);
    report.file_name = cfg.name.empty() ? fs::path(cfg.second_input).filename().string() : cfg.name;
    report.file_size_bytes = processed_bytes.size();
    report.security_level = cfg.level;
    std::cout << to_json(report) << "\n";

    if (!cfg.csv_path.empty()) {
        const bool fresh = !fs::exists(cfg.csv_path) || fs::file_size(cfg.csv_path) == 0;
        std::ofstream csv(cfg.csv_path, std::ios::app);
        if (fresh) {
            csv << kQualityCsvHeader << "\n";
        }
        csv << to_csv_row(report) << "\n";
        if (!csv) {
            throw FileError("cannot write " + cfg.csv_path.string());
        }
    }
    return kOk;
}

int cmd_bench(const CliConfig& cfg) {
    std::vector<std::pair<std::uintmax_t, fs::path>> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(cfg.input, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wav") {
            files.emplace_back(entry.file_size(), entry.path());
        }
    }
    if (ec) {
        throw FileError("cannot list " + cfg.input);
    }
    if (files.empty()) {
        throw FileError("no .wav files in " + cfg.input);
    }
    std::sort(files.begin(), files.end());

    std::ostringstream csv;
    csv << "file,size,level,encryptMs,decryptMs\n";
    std::map<int, std::vector<std::pair<std::uintmax_t, double>>> encrypt_times;
    for (int level : cfg.levels) {
        const auto key = new_session_key(level, KeyMode::Plain, cfg.seed.value_or(1), cfg.timestamp);
        const ByteOperation op = [&key](std::span<const std::uint8_t> bytes) {
            return write_wav(encrypt(parse_wav(bytes), key));
        };
        for (const auto& [size, path] : files) {
            const auto original = read_file(path);
            const auto enc = time_run(op, original, cfg.repetitions);
            const auto dec = time_run(op, enc.output, cfg.repetitions);
            if (dec.output != original) {
                std::cerr << "error: roundtrip mismatch for " << path.string() << "\n";
                return kParseError;
            }
            csv << path.filename().string() << "," << size << "," << level << "," << enc.median_ms << ","
                << dec.median_ms << "\n";
            encrypt_times[level].emplace_back(size, enc.median_ms);
        }
    }

    for (const auto& [level, points] : encrypt_times) {
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].second < points[i - 1].second) {
                std::cerr << "warning: level " << level << " encryption of " << points[i].first << " bytes was faster than "
                          << points[i - 1].first << " bytes\n";
            }
        }
    }

    std::cout << csv.str();
    if (!cfg.csv_path.empty()) {
        write_text(cfg.csv_path, csv.str());
    }
    return kOk;
}

int cmd_pin(const CliConfig& cfg) {
    const fs::path path = cfg.input;
    if (!fs::is_regular_file(path)) {
        throw FileError("cannot open " + path.string());
    }
    const auto receipt =
        ipfs::pin_path(ipfs_config(cfg), path, cfg.name.empty() ? path.filename().string() : cfg.name);
    std::cout << "CID: " << receipt.cid << "\n"
              << "Size: " << receipt.size << "\n"
              << "Gateway: " << receipt.gateway_url << "\n";
    return kOk;
}

int cmd_fetch(const CliConfig& cfg) {
    std::string cid = cfg.input;
    if (cid.starts_with(kIpfsScheme)) {
        cid = cid.substr(kIpfsScheme.size());
    }
    const fs::path out = cfg.output.empty() ? fs::path(cid) : cfg.output;
    std::ofstream sink(out, std::ios::binary | std::ios::trunc);
    if (!sink) {
        throw FileError("cannot write " + out.string());
    }
    const auto n = ipfs::fetch_cid_to(ipfs_config(cfg), cid, sink, cfg.expected_size);
    std::cout << "Output: " << out.string() << "\n"
              << "Size: " << n << "\n";
    return kOk;
}

int run(int argc, char** argv) {
    CLI::App app{"hexe: Sudoku/timestamp keyed WAV encryption"};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto level_check = CLI::IsMember({9, 16, 25});
    const auto add_network = [&cfg](CLI::App* sub) {
        sub->add_option("--api", cfg.api_override, "Pinning API base URL (overrides HEXE_IPFS_API)");
        sub->add_option("--gateway", cfg.gateway_override, "Gateway base URL (overrides HEXE_IPFS_GATEWAY)");
    };

    auto* keygen = app.add_subcommand("keygen", "Generate a .hexekey session key");
    keygen->add_option("--level", cfg.level, "Grid size 9, 16 or 25")->check(level_check);
    keygen->add_option("-o,--output", cfg.output, "Key file (stdout when omitted)");
    keygen->add_option("--timestamp", cfg.timestamp, "UNIX seconds (default: now)");
    keygen->add_option("--seed", cfg.seed, "Puzzle seed, for reproducible tests");
    keygen->add_flag("--ipfs", cfg.ipfs, "Key for the IPFS-mode keystream");

    auto* enc = app.add_subcommand("encrypt", "Encrypt a WAV file");
    enc->add_option("input", cfg.input, "WAV file")->required();
    enc->add_option("-o,--output", cfg.output, "Encrypted WAV (default: <input>.enc.wav)");
    enc->add_option("--level", cfg.level, "Grid size 9, 16 or 25")->check(level_check);
    enc->add_option("--key-out", cfg.key_out, "Where to write the .hexekey (default: beside the output)");
    enc->add_option("--key", cfg.key_path, "Reuse an existing .hexekey");
    enc->add_option("--puzzle", cfg.puzzle_path, "Use this .sud puzzle instead of generating one");
    enc->add_option("--timestamp", cfg.timestamp, "UNIX seconds (default: now)");
    enc->add_option("--seed", cfg.seed, "Puzzle seed, for reproducible tests");
    enc->add_option("--raw-offset", cfg.raw_offset, "Cipher every byte from this file offset instead of the data chunk");
    enc->add_flag("--ipfs", cfg.ipfs, "Use the IPFS keystream and pin the result");
    add_network(enc);

    auto* dec = app.add_subcommand("decrypt", "Decrypt a WAV file or ipfs://<cid>");
    dec->add_option("input", cfg.input, "WAV file or ipfs://<cid>")->required();
    dec->add_option("-o,--output", cfg.output, "Decrypted WAV (default: <input>.dec.wav)");
    dec->add_option("--key", cfg.key_path, ".hexekey session key");
    dec->add_option("--puzzle", cfg.puzzle_path, ".sud puzzle (with --timestamp)");
    dec->add_option("--timestamp", cfg.timestamp, "UNIX seconds used at encryption");
    dec->add_option("--mode", cfg.mode, "plain or ipfs, with --puzzle")->check(CLI::IsMember({"plain", "ipfs"}));
    dec->add_option("--raw-offset", cfg.raw_offset, "Cipher every byte from this file offset instead of the data chunk");
    dec->add_option("--size", cfg.expected_size, "Expected size of the fetched file");
    dec->add_flag("--ipfs", cfg.ipfs, "Input is fetched from the gateway");
    add_network(dec);

    auto* ana = app.add_subcommand("analyze", "SNR and LLR of a processed WAV against a reference");
    ana->add_option("reference", cfg.input, "Original WAV")->required();
    ana->add_option("processed", cfg.second_input, "Encrypted or decrypted WAV")->required();
    ana->add_option("--level", cfg.level, "Security level to record in the report")->check(level_check);
    ana->add_option("--name", cfg.name, "File name to record (default: processed file name)");
    ana->add_option("--csv", cfg.csv_path, "Append a CSV row to this file");

    auto* bench = app.add_subcommand("bench", "Time encryption and decryption over a fixture directory");
    bench->add_option("dir", cfg.input, "Directory of .wav fixtures")->required();
    bench->add_option("--levels", cfg.levels, "Levels to time")->delimiter(',')->check(level_check);
    bench->add_option("--reps", cfg.repetitions, "Repetitions per measurement (min 5)");
    bench->add_option("--csv", cfg.csv_path, "Also write the CSV here");
    bench->add_option("--seed", cfg.seed, "Puzzle seed");
    bench->add_option("--timestamp", cfg.timestamp, "UNIX seconds (default: now)");

    auto* pin = app.add_subcommand("pin", "Pin a file to the pinning service");
    pin->add_option("input", cfg.input, "File to pin")->required();
    pin->add_option("--name", cfg.name, "Name recorded with the pin");
    add_network(pin);

    auto* fetch = app.add_subcommand("fetch", "Download a CID through the gateway");
    fetch->add_option("cid", cfg.input, "Content identifier")->required();
    fetch->add_option("-o,--output", cfg.output, "Destination (default: the CID)");
    fetch->add_option("--size", cfg.expected_size, "Expected size in bytes");
    add_network(fetch);

    for (auto* sub : {keygen, enc, dec, ana, bench, pin, fetch}) {
        sub->add_flag("-v,--verbose", cfg.verbose, "Print derived key parameters to stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(cfg);
        if (enc->parsed()) return cmd_encrypt(cfg);
        if (dec->parsed()) return cmd_decrypt(cfg);
        if (ana->parsed()) return cmd_analyze(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
        if (pin->parsed()) return cmd_pin(cfg);
        if (fetch->parsed()) return cmd_fetch(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFileError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFileError;
    }
    return kUsage;
}

}  // namespace hexe::cli
