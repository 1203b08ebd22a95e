#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hexe {

using FourCC = std::array<char, 4>;

inline constexpr std::uint16_t kWaveFormatPcm = 0x0001;
inline constexpr std::uint16_t kWaveFormatExtensible = 0xFFFE;

/// Decoded `fmt ` fields. For WAVE_FORMAT_EXTENSIBLE, sub_format holds the
/// first two bytes of the sub-format GUID.
struct WavFormat {
    std::uint16_t audio_format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint32_t byte_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits_per_sample = 0;
    std::uint16_t sub_format = 0;

    bool is_integer_pcm() const noexcept;
};

/// One RIFF sub-chunk. `pad` holds the pad byte that follows an odd-sized
/// payload, when the file has one.
struct Chunk {
    FourCC id{};
    std::vector<std::uint8_t> payload;
    std::optional<std::uint8_t> pad;

    std::string id_string() const { return std::string(id.begin(), id.end()); }
};

/// A parsed RIFF/WAVE container.
///
/// The chunk layout is fixed after parsing: only the contents of the `data`
/// payload can be changed, never its length, so write_wav() can emit the
/// original RIFF header verbatim and stay byte-exact.
class WavFile {
public:
    const std::array<std::uint8_t, 12>& riff_header() const noexcept { return riff_header_; }
    std::uint32_t declared_riff_size() const noexcept;
    /// 4 + sum of (8 + payload + pad) over all chunks.
    std::uint64_t computed_riff_size() const noexcept;

    const std::vector<Chunk>& chunks() const noexcept { return chunks_; }
    std::size_t data_index() const noexcept { return data_index_; }
    const WavFormat& format() const noexcept { return format_; }

    std::span<const std::uint8_t> data() const noexcept { return chunks_[data_index_].payload; }
    std::span<std::uint8_t> data() noexcept { return chunks_[data_index_].payload; }

    /// Byte offset of the first data payload byte in the serialized file.
    std::size_t data_offset() const noexcept;
    std::size_t serialized_size() const noexcept;

private:
    friend WavFile parse_wav(std::span<const std::uint8_t> bytes);

    std::array<std::uint8_t, 12> riff_header_{};
    std::vector<Chunk> chunks_;
    std::size_t data_index_ = 0;
    WavFormat format_;
};

/// Walks every chunk in the buffer. Throws NotRiff, TruncatedChunk, MissingFmt,
/// MissingData, or ParseError for a second `data` chunk. Non-PCM formats parse
/// fine; only decode_samples() rejects them.
WavFile parse_wav(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> write_wav(const WavFile& wav);

/// Integer PCM samples, one vector per channel. 8-bit input is re-centred to
/// signed; wider widths are little-endian two's complement.
struct AudioSamples {
    std::uint16_t bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    std::vector<std::vector<std::int32_t>> channels;

    std::size_t frames() const noexcept { return channels.empty() ? 0 : channels.front().size(); }
    /// Largest magnitude representable at this bit depth, used to map samples into [-1, 1).
    double full_scale() const noexcept;
};

/// Throws UnsupportedEncoding unless the format is 8/16/24/32-bit integer PCM.
AudioSamples decode_samples(const WavFile& wav);

}  // namespace hexe
