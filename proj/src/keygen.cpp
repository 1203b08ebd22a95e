#include "hexe/keygen.hpp"

#include <bit>

#include "hexe/error.hpp"
#include "text_util.hpp"

namespace hexe {

std::string_view to_string(KeyMode mode) noexcept {
    return mode == KeyMode::Ipfs ? "ipfs" : "plain";
}

KeyParams derive_params(std::uint64_t timestamp, int size) {
    KeyParams kp;
    kp.timestamp = timestamp;
    kp.k = box_size_for(size);

    for (std::uint64_t rest = timestamp; rest > 0; rest /= 10) {
        kp.p += static_cast<int>(rest % 10);
    }
    kp.t = kp.p % size;
    if (kp.t == 0) {
        kp.t = 1;
    }
    kp.u = kp.p % kp.k;
    kp.u1 = static_cast<int>(timestamp % 10) % kp.k;
    return kp;
}

std::vector<int> select_mini_grid(const Puzzle& puzzle, const KeyParams& params) {
    const int k = params.k;
    if (k != puzzle.box_size) {
        throw Error(ErrorCode::InvalidArgument, "key parameters were derived for a different grid size");
    }
    std::vector<int> box;
    box.reserve(static_cast<std::size_t>(k * k));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            box.push_back(puzzle.at(params.u * k + r, params.u1 * k + c));
        }
    }
    return box;
}

int field_width(int size) {
    box_size_for(size);
    return static_cast<int>(std::bit_width(static_cast<unsigned>(size * (size - 1))));
}

Keystream build_keystream(const Puzzle& puzzle, std::uint64_t timestamp, KeyMode mode) {
    const KeyParams params = derive_params(timestamp, puzzle.size);
    const auto box = select_mini_grid(puzzle, params);
    const int width = field_width(puzzle.size);

    Keystream ks;
    ks.bit_width = width;
    ks.source = params;
    ks.bytes.assign((box.size() * static_cast<std::size_t>(width) + 7) / 8, 0);

    std::size_t bit = 0;
    for (int v : box) {
        const auto field = static_cast<unsigned>(v * params.t);
        for (int i = width - 1; i >= 0; --i, ++bit) {
            if ((field >> i) & 1U) {
                ks.bytes[bit / 8] |= static_cast<std::uint8_t>(0x80U >> (bit % 8));
            }
        }
    }

    if (mode == KeyMode::Ipfs) {
        for (auto& b : ks.bytes) {
            b = static_cast<std::uint8_t>((b * kIpfsKeyScale) & 0xFFU);
        }
    }
    return ks;
}

std::string serialize_session_key(const SessionKey& key) {
    std::string out = std::to_string(key.timestamp) + "\n";
    out += to_string(key.mode);
    out += "\n";
    out += serialize_puzzle(key.puzzle);
    return out;
}

SessionKey parse_session_key(std::string_view text) {
    const auto first_nl = text.find('\n');
    if (first_nl == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "key file is missing the mode line");
    }
    const auto second_nl = text.find('\n', first_nl + 1);
    if (second_nl == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "key file is missing the puzzle");
    }

    const auto ts = detail::parse_decimal(detail::trim(text.substr(0, first_nl)));
    if (!ts) {
        throw Error(ErrorCode::ParseError, "first line must be a non-negative decimal timestamp");
    }

    SessionKey key;
    key.timestamp = *ts;
    const auto mode = detail::trim(text.substr(first_nl + 1, second_nl - first_nl - 1));
    if (mode == "plain") {
        key.mode = KeyMode::Plain;
    } else if (mode == "ipfs") {
        key.mode = KeyMode::Ipfs;
    } else {
        throw Error(ErrorCode::ParseError, "mode must be 'plain' or 'ipfs', got '" + std::string(mode) + "'");
    }
    key.puzzle = parse_puzzle(text.substr(second_nl + 1));
    return key;
}

}  // namespace hexe
