#include "hexe/cipher.hpp"

#include <algorithm>
#include <chrono>

#include "hexe/error.hpp"

namespace hexe {

namespace {

constexpr std::size_t kExpandedKeyBytes = 4096;

Keystream checked_keystream(const SessionKey& key) {
    if (!validate_puzzle(key.puzzle)) {
        throw Error(ErrorCode::InvalidPuzzle, "session puzzle violates the row/column/box rules");
    }
    return build_keystream(key.puzzle, key.timestamp, key.mode);
}

WavFile apply(WavFile wav, const SessionKey& key) {
    const auto ks = checked_keystream(key);
    xor_in_place(wav.data(), ks.bytes);
    return wav;
}

}  // namespace

void xor_in_place(std::span<std::uint8_t> data, std::span<const std::uint8_t> key) {
    if (key.empty()) {
        throw Error(ErrorCode::EmptyKeystream, "cannot XOR with an empty keystream");
    }

    // Repeat the key into a block whose length is a multiple of the key length
    // so the phase never breaks across blocks and the inner loop vectorizes.
    const std::size_t reps = std::max<std::size_t>(1, kExpandedKeyBytes / key.size());
    std::vector<std::uint8_t> block(reps * key.size());
    for (std::size_t i = 0; i < block.size(); i += key.size()) {
        std::copy(key.begin(), key.end(), block.begin() + static_cast<std::ptrdiff_t>(i));
    }

    std::size_t pos = 0;
    while (pos < data.size()) {
        const std::size_t n = std::min(block.size(), data.size() - pos);
        std::uint8_t* out = data.data() + pos;
        const std::uint8_t* k = block.data();
        for (std::size_t j = 0; j < n; ++j) {
            out[j] ^= k[j];
        }
        pos += n;
    }
}

std::vector<std::uint8_t> xor_apply(std::span<const std::uint8_t> payload, const Keystream& ks) {
    std::vector<std::uint8_t> out(payload.begin(), payload.end());
    xor_in_place(out, ks.bytes);
    return out;
}

std::uint64_t current_unix_time() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

SessionKey new_session_key(int level, KeyMode mode, std::optional<std::uint64_t> seed,
                           std::optional<std::uint64_t> timestamp) {
    const std::uint64_t ts = timestamp ? *timestamp : current_unix_time();
    return SessionKey{generate_puzzle(level, seed), ts, mode};
}

WavFile encrypt(WavFile wav, const SessionKey& key) {
    return apply(std::move(wav), key);
}

WavFile decrypt(WavFile wav, const SessionKey& key) {
    return apply(std::move(wav), key);
}

EncryptResult encrypt(WavFile wav, int level, KeyMode mode, std::optional<std::uint64_t> seed) {
    auto key = new_session_key(level, mode, seed);
    auto out = encrypt(std::move(wav), key);
    return EncryptResult{std::move(out), std::move(key)};
}

std::vector<std::uint8_t> cipher_raw(std::span<const std::uint8_t> file, const SessionKey& key, std::size_t offset) {
    if (offset > file.size()) {
        throw Error(ErrorCode::InvalidArgument, "raw offset " + std::to_string(offset) + " is past the end of a " +
                                                    std::to_string(file.size()) + "-byte file");
    }
    const auto ks = checked_keystream(key);
    std::vector<std::uint8_t> out(file.begin(), file.end());
    xor_in_place(std::span<std::uint8_t>(out).subspan(offset), ks.bytes);
    return out;
}

}  // namespace hexe
