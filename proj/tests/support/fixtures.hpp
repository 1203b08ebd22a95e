#pragma once

// Byte-level WAV builders and synthetic speech for tests and benchmarks.
// Written without the library's parser so they can serve as its oracle.

#include <cstdint>
#include <string>
#include <vector>

namespace hexe::fixtures {

using Bytes = std::vector<std::uint8_t>;

struct ExtraChunk {
    std::string id;  // exactly four characters
    Bytes payload;
    bool before_data = true;
};

struct WavLayout {
    std::uint16_t format_tag = 1;
    std::uint16_t channels = 1;
    std::uint32_t sample_rate = 44100;
    std::uint16_t bits_per_sample = 16;
    Bytes data;
    std::vector<ExtraChunk> extra;
};

/// Serializes RIFF/WAVE with `fmt ` first, then extras marked before_data,
/// then `data`, then the remaining extras. Odd chunks get a zero pad byte.
Bytes build_wav(const WavLayout& layout);

/// Mono 16-bit speech-like signal: a glottal pulse train with drifting pitch
/// through three formant resonators, a syllable-rate envelope, unvoiced noise
/// bursts and a quiet noise floor in pauses.
std::vector<std::int16_t> speech_like_samples(std::size_t count, std::uint32_t sample_rate, std::uint64_t seed);

Bytes pcm16_bytes(const std::vector<std::int16_t>& samples);

/// Canonical 44-byte-header mono 16-bit file of exactly `total_bytes`
/// (rounded down to an even data size) filled with speech_like_samples().
Bytes speech_like_wav(std::size_t total_bytes, std::uint64_t seed, std::uint32_t sample_rate = 8000);

/// Named size points: 1 KiB, 2 KiB, 24.5 MiB and 35.2 MiB.
struct SizePoint {
    std::string name;
    std::size_t bytes;
};
std::vector<SizePoint> table_size_points();

}  // namespace hexe::fixtures
