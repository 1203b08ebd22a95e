#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hexe {

/// Grid dimensions accepted as a security level.
inline constexpr std::array<int, 3> kSupportedSizes = {9, 16, 25};

bool is_supported_size(int size) noexcept;

/// Side of one aligned box: 3, 4 or 5. Throws UnsupportedSize otherwise.
int box_size_for(int size);

/// A solved size x size Sudoku grid, stored row-major with values in [1, size].
///
/// The type does not enforce the Sudoku rules itself so that tampered or
/// hand-edited grids can still be represented and rejected by
/// validate_puzzle().
struct Puzzle {
    int size = 0;
    int box_size = 0;
    std::vector<int> cells;

    int at(int row, int col) const { return cells[static_cast<std::size_t>(row * size + col)]; }

    bool operator==(const Puzzle&) const = default;
};

/// Small deterministic generator with 64 bits of state (SplitMix64).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;

    /// Uniform value in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// The unshuffled solution cells[r][c] = ((r*k + r/k + c) mod N) + 1.
Puzzle canonical_puzzle(int size);

/// Canonical grid pushed through seed-driven symbol relabeling, row swaps
/// within bands, column swaps within stacks, band swaps and stack swaps.
/// Without a seed the generator is seeded from std::random_device.
Puzzle generate_puzzle(int size, std::optional<std::uint64_t> seed = std::nullopt);

/// True iff every row, column and box is a permutation of 1..N.
/// Malformed dimensions yield false rather than an error.
bool validate_puzzle(const Puzzle& puzzle) noexcept;

/// First line N, then N lines of N space-separated values, newline-terminated.
std::string serialize_puzzle(const Puzzle& puzzle);

/// Inverse of serialize_puzzle(). Throws ParseError for malformed text and
/// InvalidPuzzle for a well-formed grid that breaks the Sudoku rules.
Puzzle parse_puzzle(std::string_view text);

}  // namespace hexe
