#include "hexe/puzzle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <span>

#include "hexe/error.hpp"
#include "text_util.hpp"

namespace hexe {

namespace {

// Fisher-Yates over an index vector, driven by SeededRng so the result does
// not depend on the standard library's shuffle implementation.
void shuffle_in_place(std::span<int> values, SeededRng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

// Returns an order of `size` lines (rows or columns) that permutes whole
// groups of k and lines within each group, which keeps every Sudoku unit a
// permutation.
std::vector<int> grouped_order(int size, int k, SeededRng& rng) {
    std::vector<int> groups(static_cast<std::size_t>(k));
    std::iota(groups.begin(), groups.end(), 0);
    shuffle_in_place(groups, rng);

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(size));
    for (int g : groups) {
        std::vector<int> within(static_cast<std::size_t>(k));
        std::iota(within.begin(), within.end(), g * k);
        shuffle_in_place(within, rng);
        order.insert(order.end(), within.begin(), within.end());
    }
    return order;
}

bool is_permutation_of_1_to_n(std::span<const int> unit, int n) {
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : unit) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
            return false;
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    return unit.size() == static_cast<std::size_t>(n);
}

}  // namespace

bool is_supported_size(int size) noexcept {
    return std::find(kSupportedSizes.begin(), kSupportedSizes.end(), size) != kSupportedSizes.end();
}

int box_size_for(int size) {
    switch (size) {
        case 9: return 3;
        case 16: return 4;
        case 25: return 5;
        default:
            throw Error(ErrorCode::UnsupportedSize,
                        "grid size " + std::to_string(size) + " is not one of 9, 16, 25");
    }
}

std::uint64_t SeededRng::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SeededRng::below(std::uint64_t bound) noexcept {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next();
    while (x >= limit) {
        x = next();
    }
    return x % bound;
}

Puzzle canonical_puzzle(int size) {
    const int k = box_size_for(size);
    Puzzle p{size, k, std::vector<int>(static_cast<std::size_t>(size * size))};
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            p.cells[static_cast<std::size_t>(r * size + c)] = ((r * k + r / k + c) % size) + 1;
        }
    }
    return p;
}

Puzzle generate_puzzle(int size, std::optional<std::uint64_t> seed) {
    const Puzzle base = canonical_puzzle(size);
    const int k = base.box_size;

    if (!seed) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    SeededRng rng(*seed);

    std::vector<int> relabel(static_cast<std::size_t>(size));
    std::iota(relabel.begin(), relabel.end(), 1);
    shuffle_in_place(relabel, rng);

    const auto rows = grouped_order(size, k, rng);
    const auto cols = grouped_order(size, k, rng);

    Puzzle out{size, k, std::vector<int>(base.cells.size())};
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const int v = base.at(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
            out.cells[static_cast<std::size_t>(r * size + c)] = relabel[static_cast<std::size_t>(v - 1)];
        }
    }
    return out;
}

bool validate_puzzle(const Puzzle& puzzle) noexcept {
    const int n = puzzle.size;
    const int k = puzzle.box_size;
    if (n <= 0 || k <= 0 || k * k != n ||
        puzzle.cells.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        return false;
    }

    std::vector<int> unit(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            unit[static_cast<std::size_t>(j)] = puzzle.at(i, j);
        }
        if (!is_permutation_of_1_to_n(unit, n)) {
            return false;
        }
        for (int j = 0; j < n; ++j) {
            unit[static_cast<std::size_t>(j)] = puzzle.at(j, i);
        }
        if (!is_permutation_of_1_to_n(unit, n)) {
            return false;
        }
        // box i, numbered row-major over the k x k box layout
        const int top = (i / k) * k;
        const int left = (i % k) * k;
        for (int j = 0; j < n; ++j) {
            unit[static_cast<std::size_t>(j)] = puzzle.at(top + j / k, left + j % k);
        }
        if (!is_permutation_of_1_to_n(unit, n)) {
            return false;
        }
    }
    return true;
}

std::string serialize_puzzle(const Puzzle& puzzle) {
    std::string out = std::to_string(puzzle.size) + "\n";
    for (int r = 0; r < puzzle.size; ++r) {
        for (int c = 0; c < puzzle.size; ++c) {
            if (c > 0) {
                out += ' ';
            }
            out += std::to_string(puzzle.at(r, c));
        }
        out += '\n';
    }
    return out;
}

Puzzle parse_puzzle(std::string_view text) {
    auto lines = detail::split_lines(text);
    while (!lines.empty() && detail::trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw Error(ErrorCode::ParseError, "empty puzzle text");
    }

    const auto n = detail::parse_decimal(detail::trim(lines.front()));
    if (!n) {
        throw Error(ErrorCode::ParseError, "first line must be the grid size");
    }
    if (*n > 25 || !is_supported_size(static_cast<int>(*n))) {
        throw Error(ErrorCode::ParseError, "unsupported grid size " + std::string(detail::trim(lines.front())));
    }
    const int size = static_cast<int>(*n);
    if (lines.size() != static_cast<std::size_t>(size) + 1) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(size) + " rows, found " +
                                               std::to_string(lines.size() - 1));
    }

    Puzzle p{size, box_size_for(size), {}};
    p.cells.reserve(static_cast<std::size_t>(size * size));
    for (int r = 0; r < size; ++r) {
        const auto words = detail::split_words(lines[static_cast<std::size_t>(r) + 1]);
        if (words.size() != static_cast<std::size_t>(size)) {
            throw Error(ErrorCode::ParseError, "row " + std::to_string(r + 1) + " has " +
                                                   std::to_string(words.size()) + " values, expected " +
                                                   std::to_string(size));
        }
        for (auto w : words) {
            const auto v = detail::parse_decimal(w);
            if (!v || *v > 1000) {
                throw Error(ErrorCode::ParseError, "bad cell value '" + std::string(w) + "'");
            }
            p.cells.push_back(static_cast<int>(*v));
        }
    }

    if (!validate_puzzle(p)) {
        throw Error(ErrorCode::InvalidPuzzle, "grid violates the row/column/box rules");
    }
    return p;
}

}  // namespace hexe
