#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hexe/keygen.hpp"
#include "hexe/wav.hpp"

namespace hexe {

/// out[i] = in[i] ^ key[i mod key.size()], in place. Throws EmptyKeystream.
void xor_in_place(std::span<std::uint8_t> data, std::span<const std::uint8_t> key);

std::vector<std::uint8_t> xor_apply(std::span<const std::uint8_t> payload, const Keystream& ks);

/// Seconds since the epoch, read from the system clock.
std::uint64_t current_unix_time();

/// Fresh key for an encryption: a generated puzzle plus the current time
/// (or `timestamp` when given).
SessionKey new_session_key(int level, KeyMode mode, std::optional<std::uint64_t> seed = std::nullopt,
                           std::optional<std::uint64_t> timestamp = std::nullopt);

/// XORs the data payload with the session keystream; every other byte of the
/// container is left alone. Throws InvalidPuzzle for a grid that fails
/// validate_puzzle().
WavFile encrypt(WavFile wav, const SessionKey& key);
WavFile decrypt(WavFile wav, const SessionKey& key);

struct EncryptResult {
    WavFile wav;
    SessionKey key;
};

/// Encrypt with a freshly generated key; the key is returned because it is
/// the only way back.
EncryptResult encrypt(WavFile wav, int level, KeyMode mode, std::optional<std::uint64_t> seed = std::nullopt);

/// Fixed-offset variant operating on the raw file bytes: everything from
/// `offset` to the end is XORed, with keystream index 0 at `offset`. Chunk
/// structure is ignored, so the output may no longer parse as WAV.
std::vector<std::uint8_t> cipher_raw(std::span<const std::uint8_t> file, const SessionKey& key, std::size_t offset);

}  // namespace hexe
