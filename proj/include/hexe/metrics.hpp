#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hexe/wav.hpp"

namespace hexe {

/// 10*log10(sum x^2 / sum (x - y)^2) over all channels, on samples scaled to
/// [-1, 1). Returns +infinity when the error energy is exactly zero.
/// Throws LengthMismatch or SilentReference.
double snr_db(const AudioSamples& reference, const AudioSamples& processed);
double snr_db(std::span<const double> reference, std::span<const double> processed);

struct LpcResult {
    /// a[1..order] of A(z) = 1 + sum a[i] z^-i.
    std::vector<double> coefficients;
    std::vector<double> reflection;
    /// Prediction error after each recursion step; front() is autocorr[0].
    std::vector<double> step_errors;

    double error() const { return step_errors.back(); }
};

/// Levinson-Durbin recursion on autocorr[0..order]. The recursion stops early,
/// leaving the remaining coefficients at zero, if the error reaches zero.
/// Throws SingularFrame when autocorr[0] == 0 and InvalidArgument when
/// order >= autocorr.size().
LpcResult levinson_durbin(std::span<const double> autocorr, int order);

struct LlrOptions {
    int order = 10;
    double frame_ms = 30.0;
    double overlap = 0.5;
};

struct LlrResult {
    double mean = 0.0;
    std::size_t frame_count = 0;
};

/// Mean per-frame log-likelihood ratio ln(a_p R_r a_p' / a_r R_r a_r'), with
/// Hamming-windowed frames and R_r the reference autocorrelation matrix.
/// Frames where either signal has zero energy are skipped. Throws
/// LengthMismatch or TooShort (no complete frame).
LlrResult llr(const AudioSamples& reference, const AudioSamples& processed, const LlrOptions& options = {});

struct QualityReport {
    std::string file_name;
    std::uint64_t file_size_bytes = 0;
    int security_level = 0;
    double snr_db = 0.0;
    double llr = 0.0;
    std::size_t frame_count = 0;
    double elapsed_ms = 0.0;
};

/// Decodes both files and fills snr_db, llr and frame_count.
QualityReport analyze(const WavFile& reference, const WavFile& processed);

/// Single-line JSON; an infinite SNR is written as the string "Infinity".
std::string to_json(const QualityReport& report);

inline constexpr const char* kQualityCsvHeader = "file,size,level,snrDb,llr,elapsedMs";
std::string to_csv_row(const QualityReport& report);

using ByteOperation = std::function<std::vector<std::uint8_t>(std::span<const std::uint8_t>)>;

struct TimedRun {
    std::vector<std::uint8_t> output;
    std::vector<double> runs_ms;
    double median_ms = 0.0;
};

/// Runs `op` on in-memory bytes `repetitions` times (at least 5) and reports
/// the median wall-clock time. The output of the last run is kept.
TimedRun time_run(const ByteOperation& op, std::span<const std::uint8_t> input, int repetitions = 5);

double median(std::vector<double> values);

}  // namespace hexe
