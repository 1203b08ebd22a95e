#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hexe::fixtures {

namespace {

void put_le16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_le32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
}

void put_chunk(Bytes& out, const std::string& id, const Bytes& payload) {
    if (id.size() != 4) {
        throw std::invalid_argument("chunk id must be four characters: '" + id + "'");
    }
    out.insert(out.end(), id.begin(), id.end());
    put_le32(out, static_cast<std::uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    if (payload.size() % 2 == 1) {
        out.push_back(0);
    }
}

struct Resonator {
    double a1 = 0, a2 = 0, gain = 0, y1 = 0, y2 = 0;

    void tune(double freq, double bandwidth, double rate) {
        const double r = std::exp(-std::numbers::pi * bandwidth / rate);
        a1 = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / rate);
        a2 = -r * r;
        gain = 1.0 - r;
    }

    double step(double x) {
        const double y = gain * x + a1 * y1 + a2 * y2;
        y2 = y1;
        y1 = y;
        return y;
    }
};

// First three formants (Hz) of a handful of vowels.
constexpr std::array<std::array<double, 3>, 5> kVowels = {{
    {730, 1090, 2440},
    {270, 2290, 3010},
    {530, 1840, 2480},
    {570, 840, 2410},
    {300, 870, 2240},
}};

enum class Segment { Voiced, Unvoiced, Pause };

std::vector<double> render(std::size_t count, std::uint32_t rate, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::array<Resonator, 3> formants;
    std::vector<double> out(count);

    std::size_t seg_left = 0;
    std::size_t seg_len = 1;
    Segment seg = Segment::Pause;
    double phase = 0.0;
    const double fs = static_cast<double>(rate);

    for (std::size_t n = 0; n < count; ++n) {
        if (seg_left == 0) {
            const double pick = uni(rng);
            seg = pick < 0.62 ? Segment::Voiced : (pick < 0.8 ? Segment::Unvoiced : Segment::Pause);
            seg_len = static_cast<std::size_t>(fs * (0.12 + 0.22 * uni(rng)));
            seg_left = seg_len;
            const auto& v = kVowels[static_cast<std::size_t>(uni(rng) * kVowels.size()) % kVowels.size()];
            for (std::size_t i = 0; i < 3; ++i) {
                formants[i].tune(v[i], 60.0 + 40.0 * static_cast<double>(i), fs);
            }
        }
        const double progress = 1.0 - static_cast<double>(seg_left) / static_cast<double>(seg_len);
        const double envelope = std::sin(std::numbers::pi * progress);
        --seg_left;

        const double t = static_cast<double>(n) / fs;
        double excitation = 0.0;
        switch (seg) {
            case Segment::Voiced: {
                const double f0 = 125.0 + 35.0 * std::sin(2.0 * std::numbers::pi * 0.6 * t);
                phase += f0 / fs;
                if (phase >= 1.0) {
                    phase -= 1.0;
                    excitation = 40.0;
                }
                excitation += 0.4 * gauss(rng);
                excitation *= envelope;
                break;
            }
            case Segment::Unvoiced:
                excitation = 3.0 * envelope * gauss(rng);
                break;
            case Segment::Pause:
                break;
        }

        double y = excitation;
        for (auto& f : formants) {
            y = f.step(y);
        }
        // Keep a faint noise floor so no stretch is digital silence.
        out[n] = y + 0.0015 * gauss(rng);
    }
    return out;
}

}  // namespace

Bytes build_wav(const WavLayout& layout) {
    Bytes fmt;
    const auto block_align = static_cast<std::uint16_t>(layout.channels * (layout.bits_per_sample / 8));
    put_le16(fmt, layout.format_tag);
    put_le16(fmt, layout.channels);
    put_le32(fmt, layout.sample_rate);
    put_le32(fmt, layout.sample_rate * block_align);
    put_le16(fmt, block_align);
    put_le16(fmt, layout.bits_per_sample);

    Bytes body;
    put_chunk(body, "fmt ", fmt);
    for (const auto& c : layout.extra) {
        if (c.before_data) {
            put_chunk(body, c.id, c.payload);
        }
    }
    put_chunk(body, "data", layout.data);
    for (const auto& c : layout.extra) {
        if (!c.before_data) {
            put_chunk(body, c.id, c.payload);
        }
    }

    Bytes out = {'R', 'I', 'F', 'F'};
    put_le32(out, static_cast<std::uint32_t>(4 + body.size()));
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

std::vector<std::int16_t> speech_like_samples(std::size_t count, std::uint32_t sample_rate, std::uint64_t seed) {
    // Calibrate the gain on a short prefix so peaks land near half scale.
    const std::size_t pilot_len = std::min<std::size_t>(count, sample_rate * 3);
    const auto pilot = render(pilot_len, sample_rate, seed);
    double peak = 1e-9;
    for (double v : pilot) {
        peak = std::max(peak, std::abs(v));
    }
    const double gain = 0.5 * 32767.0 / peak;

    const auto signal = count == pilot_len ? pilot : render(count, sample_rate, seed);
    std::vector<std::int16_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = static_cast<std::int16_t>(std::clamp(std::lround(signal[i] * gain), -32768L, 32767L));
    }
    return out;
}

Bytes pcm16_bytes(const std::vector<std::int16_t>& samples) {
    Bytes out;
    out.reserve(samples.size() * 2);
    for (auto s : samples) {
        put_le16(out, static_cast<std::uint16_t>(s));
    }
    return out;
}

Bytes speech_like_wav(std::size_t total_bytes, std::uint64_t seed, std::uint32_t sample_rate) {
    if (total_bytes < 46) {
        throw std::invalid_argument("a speech fixture needs at least one sample");
    }
    const std::size_t samples = (total_bytes - 44) / 2;
    WavLayout layout;
    layout.sample_rate = sample_rate;
    layout.data = pcm16_bytes(speech_like_samples(samples, sample_rate, seed));
    return build_wav(layout);
}

std::vector<SizePoint> table_size_points() {
    return {
        {"Test1.wav", 1024},
        {"Test.wav", 2048},
        {"File1.wav", static_cast<std::size_t>(24.5 * 1024 * 1024)},
        {"File2.wav", static_cast<std::size_t>(35.2 * 1024 * 1024)},
    };
}

}  // namespace hexe::fixtures
