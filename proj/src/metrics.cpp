#include "hexe/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hexe/error.hpp"

namespace hexe {

namespace {

void require_same_shape(const AudioSamples& a, const AudioSamples& b) {
    if (a.channels.size() != b.channels.size() || a.frames() != b.frames()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(a.channels.size()) + "x" + std::to_string(a.frames()) + " vs " +
                        std::to_string(b.channels.size()) + "x" + std::to_string(b.frames()) + " samples");
    }
}

std::vector<double> hamming(std::size_t n) {
    std::vector<double> w(n);
    if (n == 1) {
        w[0] = 1.0;
        return w;
    }
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return w;
}

void autocorrelate(std::span<const double> x, std::span<double> r) {
    for (std::size_t lag = 0; lag < r.size(); ++lag) {
        double acc = 0.0;
        for (std::size_t i = lag; i < x.size(); ++i) {
            acc += x[i] * x[i - lag];
        }
        r[lag] = acc;
    }
}

// a' R a for the symmetric Toeplitz matrix built from r, with a[0] == 1.
double toeplitz_quadratic(std::span<const double> a, std::span<const double> r) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            total += a[i] * r[i > j ? i - j : j - i] * a[j];
        }
    }
    return total;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

double snr_db(std::span<const double> reference, std::span<const double> processed) {
    if (reference.size() != processed.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(reference.size()) + " vs " +
                                                   std::to_string(processed.size()) + " samples");
    }
    double signal = 0.0;
    double noise = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference[i] - processed[i];
        signal += reference[i] * reference[i];
        noise += d * d;
    }
    if (signal == 0.0) {
        throw Error(ErrorCode::SilentReference, "reference signal has zero energy");
    }
    if (noise == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(signal / noise);
}

double snr_db(const AudioSamples& reference, const AudioSamples& processed) {
    require_same_shape(reference, processed);
    const double ref_scale = reference.full_scale();
    const double proc_scale = processed.full_scale();

    std::vector<double> x;
    std::vector<double> y;
    x.reserve(reference.frames() * reference.channels.size());
    y.reserve(x.capacity());
    for (std::size_t ch = 0; ch < reference.channels.size(); ++ch) {
        for (std::size_t i = 0; i < reference.frames(); ++i) {
            x.push_back(reference.channels[ch][i] / ref_scale);
            y.push_back(processed.channels[ch][i] / proc_scale);
        }
    }
    return snr_db(x, y);
}

LpcResult levinson_durbin(std::span<const double> autocorr, int order) {
    if (order < 0 || static_cast<std::size_t>(order) >= autocorr.size()) {
        throw Error(ErrorCode::InvalidArgument, "LPC order " + std::to_string(order) + " needs " +
                                                    std::to_string(order + 1) + " autocorrelation lags");
    }
    if (autocorr[0] == 0.0) {
        throw Error(ErrorCode::SingularFrame, "zero-energy frame");
    }

    const auto n = static_cast<std::size_t>(order);
    std::vector<double> a(n + 1, 0.0);
    a[0] = 1.0;

    LpcResult out;
    out.step_errors.push_back(autocorr[0]);
    double err = autocorr[0];
    for (std::size_t i = 1; i <= n && err > 0.0; ++i) {
        double acc = autocorr[i];
        for (std::size_t j = 1; j < i; ++j) {
            acc += a[j] * autocorr[i - j];
        }
        const double k = -acc / err;

        std::vector<double> prev(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
        for (std::size_t j = 1; j < i; ++j) {
            a[j] = prev[j] + k * prev[i - j];
        }
        a[i] = k;

        err *= (1.0 - k * k);
        err = std::max(err, 0.0);
        out.reflection.push_back(k);
        out.step_errors.push_back(err);
    }

    out.coefficients.assign(a.begin() + 1, a.end());
    return out;
}

LlrResult llr(const AudioSamples& reference, const AudioSamples& processed, const LlrOptions& options) {
    require_same_shape(reference, processed);

    const auto frame_len = static_cast<std::size_t>(std::lround(reference.sample_rate * options.frame_ms / 1000.0));
    const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(frame_len * (1.0 - options.overlap))));
    const auto order = static_cast<std::size_t>(options.order);
    if (frame_len <= order || reference.frames() < frame_len) {
        throw Error(ErrorCode::TooShort, std::to_string(reference.frames()) +
                                             " samples do not fill one " + std::to_string(frame_len) +
                                             "-sample analysis frame");
    }

    const auto window = hamming(frame_len);
    const double ref_scale = reference.full_scale();
    const double proc_scale = processed.full_scale();

    std::vector<double> xr(frame_len);
    std::vector<double> xp(frame_len);
    std::vector<double> rr(order + 1);
    std::vector<double> rp(order + 1);

    LlrResult result;
    double sum = 0.0;
    for (std::size_t ch = 0; ch < reference.channels.size(); ++ch) {
        const auto& ref = reference.channels[ch];
        const auto& proc = processed.channels[ch];
        for (std::size_t start = 0; start + frame_len <= ref.size(); start += hop) {
            for (std::size_t i = 0; i < frame_len; ++i) {
                xr[i] = window[i] * (ref[start + i] / ref_scale);
                xp[i] = window[i] * (proc[start + i] / proc_scale);
            }
            autocorrelate(xr, rr);
            autocorrelate(xp, rp);
            if (rr[0] == 0.0 || rp[0] == 0.0) {
                continue;
            }

            auto lpc_ref = levinson_durbin(rr, options.order);
            auto lpc_proc = levinson_durbin(rp, options.order);
            lpc_ref.coefficients.insert(lpc_ref.coefficients.begin(), 1.0);
            lpc_proc.coefficients.insert(lpc_proc.coefficients.begin(), 1.0);

            const double num = toeplitz_quadratic(lpc_proc.coefficients, rr);
            const double den = toeplitz_quadratic(lpc_ref.coefficients, rr);
            if (!(num > 0.0) || !(den > 0.0)) {
                continue;
            }
            sum += std::log(num / den);
            ++result.frame_count;
        }
    }
    result.mean = result.frame_count > 0 ? sum / static_cast<double>(result.frame_count) : 0.0;
    return result;
}

QualityReport analyze(const WavFile& reference, const WavFile& processed) {
    const auto ref = decode_samples(reference);
    const auto proc = decode_samples(processed);

    QualityReport report;
    report.file_size_bytes = processed.serialized_size();
    report.snr_db = snr_db(ref, proc);
    const auto l = llr(ref, proc);
    report.llr = l.mean;
    report.frame_count = l.frame_count;
    return report;
}

std::string to_json(const QualityReport& report) {
    nlohmann::ordered_json j;
    j["file"] = report.file_name;
    j["size"] = report.file_size_bytes;
    j["level"] = report.security_level;
    if (std::isinf(report.snr_db)) {
        j["snrDb"] = report.snr_db > 0 ? "Infinity" : "-Infinity";
    } else {
        j["snrDb"] = report.snr_db;
    }
    j["llr"] = report.llr;
    j["frameCount"] = report.frame_count;
    j["elapsedMs"] = report.elapsed_ms;
    return j.dump();
}

std::string to_csv_row(const QualityReport& report) {
    std::string snr = std::isinf(report.snr_db) ? (report.snr_db > 0 ? "Inf" : "-Inf") : format_double(report.snr_db);
    return report.file_name + "," + std::to_string(report.file_size_bytes) + "," +
           std::to_string(report.security_level) + "," + snr + "," + format_double(report.llr) + "," +
           format_double(report.elapsed_ms);
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

TimedRun time_run(const ByteOperation& op, std::span<const std::uint8_t> input, int repetitions) {
    repetitions = std::max(repetitions, 5);
    TimedRun run;
    run.runs_ms.reserve(static_cast<std::size_t>(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto start = std::chrono::steady_clock::now();
        auto out = op(input);
        const auto stop = std::chrono::steady_clock::now();
        run.runs_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        run.output = std::move(out);
    }
    run.median_ms = median(run.runs_ms);
    return run;
}

}  // namespace hexe
