#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hexe/puzzle.hpp"

namespace hexe {

/// Plain ciphers with the packed mini-grid; Ipfs additionally scales every
/// key byte by 5000 (mod 256) before use.
enum class KeyMode { Plain, Ipfs };

std::string_view to_string(KeyMode mode) noexcept;

/// Multiplier applied to each packed key byte in Ipfs mode: 5000 mod 256.
inline constexpr unsigned kIpfsKeyScale = 5000U % 256U;

/// Quantities derived from a UNIX timestamp for one grid size.
struct KeyParams {
    std::uint64_t timestamp = 0;
    int p = 0;   // decimal digit sum of the timestamp
    int k = 0;   // box side, sqrt(N)
    int t = 0;   // p mod N, with 0 replaced by 1
    int u = 0;   // box row, p mod k
    int u1 = 0;  // box column, last digit mod k

    bool operator==(const KeyParams&) const = default;
};

KeyParams derive_params(std::uint64_t timestamp, int size);

/// The aligned k x k box with top-left cell (u*k, u1*k), copied row-major.
std::vector<int> select_mini_grid(const Puzzle& puzzle, const KeyParams& params);

/// Bits per packed field: bit length of N*(N-1), i.e. 7, 8 or 10.
int field_width(int size);

/// Packed key material. Length is ceil(k*k*bit_width / 8).
struct Keystream {
    std::vector<std::uint8_t> bytes;
    int bit_width = 0;
    KeyParams source;
};

/// Scales the selected box by t, writes each product as a big-endian field of
/// field_width() bits, packs MSB-first with zero padding on the right, and in
/// Ipfs mode multiplies every byte by kIpfsKeyScale.
Keystream build_keystream(const Puzzle& puzzle, std::uint64_t timestamp, KeyMode mode);

/// Everything a receiver needs to undo an encryption.
struct SessionKey {
    Puzzle puzzle;
    std::uint64_t timestamp = 0;
    KeyMode mode = KeyMode::Plain;

    bool operator==(const SessionKey&) const = default;
};

/// `.hexekey` text: timestamp line, mode line (`plain` | `ipfs`), then the
/// serialized puzzle.
std::string serialize_session_key(const SessionKey& key);
SessionKey parse_session_key(std::string_view text);

}  // namespace hexe
