#include "hexe/wav.hpp"

#include <algorithm>
#include <cstring>

#include "hexe/error.hpp"

namespace hexe {

namespace {

std::uint16_t read_le16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_le32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void append_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

bool id_is(const FourCC& id, const char (&tag)[5]) {
    return std::memcmp(id.data(), tag, 4) == 0;
}

WavFormat decode_fmt(const Chunk& chunk) {
    const auto& p = chunk.payload;
    if (p.size() < 16) {
        throw Error(ErrorCode::MissingFmt, "fmt chunk is " + std::to_string(p.size()) + " bytes, need 16");
    }
    WavFormat f;
    f.audio_format = read_le16(p, 0);
    f.channels = read_le16(p, 2);
    f.sample_rate = read_le32(p, 4);
    f.byte_rate = read_le32(p, 8);
    f.block_align = read_le16(p, 12);
    f.bits_per_sample = read_le16(p, 14);
    // cbSize(2) validBits(2) channelMask(4) then the GUID
    if (f.audio_format == kWaveFormatExtensible && p.size() >= 26) {
        f.sub_format = read_le16(p, 24);
    }
    return f;
}

}  // namespace

bool WavFormat::is_integer_pcm() const noexcept {
    const bool pcm = audio_format == kWaveFormatPcm ||
                     (audio_format == kWaveFormatExtensible && sub_format == kWaveFormatPcm);
    const bool width_ok = bits_per_sample == 8 || bits_per_sample == 16 || bits_per_sample == 24 ||
                          bits_per_sample == 32;
    return pcm && width_ok && channels > 0;
}

std::uint32_t WavFile::declared_riff_size() const noexcept {
    return read_le32(riff_header_, 4);
}

std::uint64_t WavFile::computed_riff_size() const noexcept {
    std::uint64_t total = 4;
    for (const auto& c : chunks_) {
        total += 8 + c.payload.size() + (c.pad ? 1 : 0);
    }
    return total;
}

std::size_t WavFile::data_offset() const noexcept {
    std::size_t offset = riff_header_.size();
    for (std::size_t i = 0; i < data_index_; ++i) {
        offset += 8 + chunks_[i].payload.size() + (chunks_[i].pad ? 1 : 0);
    }
    return offset + 8;
}

std::size_t WavFile::serialized_size() const noexcept {
    return riff_header_.size() + static_cast<std::size_t>(computed_riff_size()) - 4;
}

WavFile parse_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw Error(ErrorCode::NotRiff, "input does not start with RIFF....WAVE");
    }

    WavFile wav;
    std::copy_n(bytes.begin(), 12, wav.riff_header_.begin());

    std::optional<std::size_t> fmt_index;
    std::optional<std::size_t> data_index;
    std::size_t pos = 12;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < 8) {
            throw Error(ErrorCode::TruncatedChunk,
                        std::to_string(bytes.size() - pos) + " stray bytes at offset " + std::to_string(pos));
        }
        Chunk chunk;
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), 4, chunk.id.begin());
        const std::uint32_t size = read_le32(bytes, pos + 4);
        pos += 8;
        if (size > bytes.size() - pos) {
            throw Error(ErrorCode::TruncatedChunk, "chunk '" + chunk.id_string() + "' declares " +
                                                       std::to_string(size) + " bytes but only " +
                                                       std::to_string(bytes.size() - pos) + " remain");
        }
        const auto payload = bytes.subspan(pos, size);
        chunk.payload.assign(payload.begin(), payload.end());
        pos += size;
        // A final odd chunk may legitimately lack its pad byte at end of file.
        if ((size & 1U) != 0 && pos < bytes.size()) {
            chunk.pad = bytes[pos];
            ++pos;
        }

        if (id_is(chunk.id, "fmt ") && !fmt_index) {
            fmt_index = wav.chunks_.size();
        } else if (id_is(chunk.id, "data")) {
            if (data_index) {
                throw Error(ErrorCode::ParseError, "more than one data chunk");
            }
            data_index = wav.chunks_.size();
        }
        wav.chunks_.push_back(std::move(chunk));
    }

    if (!fmt_index) {
        throw Error(ErrorCode::MissingFmt, "no 'fmt ' chunk");
    }
    if (!data_index) {
        throw Error(ErrorCode::MissingData, "no 'data' chunk");
    }
    wav.format_ = decode_fmt(wav.chunks_[*fmt_index]);
    wav.data_index_ = *data_index;
    return wav;
}

std::vector<std::uint8_t> write_wav(const WavFile& wav) {
    std::vector<std::uint8_t> out;
    out.reserve(wav.serialized_size());
    out.insert(out.end(), wav.riff_header().begin(), wav.riff_header().end());
    for (const auto& c : wav.chunks()) {
        out.insert(out.end(), c.id.begin(), c.id.end());
        append_le32(out, static_cast<std::uint32_t>(c.payload.size()));
        out.insert(out.end(), c.payload.begin(), c.payload.end());
        if (c.pad) {
            out.push_back(*c.pad);
        }
    }
    return out;
}

double AudioSamples::full_scale() const noexcept {
    return static_cast<double>(1ULL << (bits_per_sample - 1));
}

AudioSamples decode_samples(const WavFile& wav) {
    const auto& fmt = wav.format();
    if (!fmt.is_integer_pcm()) {
        throw Error(ErrorCode::UnsupportedEncoding,
                    "format tag " + std::to_string(fmt.audio_format) + " with " +
                        std::to_string(fmt.bits_per_sample) + " bits is not integer PCM");
    }

    const std::size_t width = fmt.bits_per_sample / 8U;
    const std::size_t channels = fmt.channels;
    const auto data = wav.data();
    const std::size_t frames = data.size() / (channels * width);

    AudioSamples out;
    out.bits_per_sample = fmt.bits_per_sample;
    out.sample_rate = fmt.sample_rate;
    out.channels.assign(channels, std::vector<std::int32_t>(frames));

    const std::uint8_t* p = data.data();
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t ch = 0; ch < channels; ++ch, p += width) {
            std::int32_t s = 0;
            switch (width) {
                case 1:
                    s = static_cast<std::int32_t>(p[0]) - 128;
                    break;
                case 2:
                    s = static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
                    break;
                case 3: {
                    std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                                      (static_cast<std::uint32_t>(p[2]) << 16);
                    if (u & 0x800000U) {
                        u |= 0xFF000000U;
                    }
                    s = static_cast<std::int32_t>(u);
                    break;
                }
                default:
                    s = static_cast<std::int32_t>(static_cast<std::uint32_t>(p[0]) |
                                                  (static_cast<std::uint32_t>(p[1]) << 8) |
                                                  (static_cast<std::uint32_t>(p[2]) << 16) |
                                                  (static_cast<std::uint32_t>(p[3]) << 24));
                    break;
            }
            out.channels[ch][f] = s;
        }
    }
    return out;
}

}  // namespace hexe
