#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hexe/error.hpp"
#include "hexe/puzzle.hpp"
#include "oracles.hpp"

using namespace hexe;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected hexe::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("canonical base grid is valid for every size") {
    for (int n : kSupportedSizes) {
        const auto p = canonical_puzzle(n);
        CHECK(oracle::brute_force_valid(p));
        CHECK(validate_puzzle(p));
    }
    const auto p9 = canonical_puzzle(9);
    CHECK(std::vector<int>(p9.cells.begin(), p9.cells.begin() + 9) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(p9.at(1, 0) == 4);
    CHECK(p9.at(2, 0) == 7);
    CHECK(p9.at(3, 0) == 2);
}

TEST_CASE("generate_puzzle") {
    SUBCASE("seeded 9x9 is valid") {
        const auto p = generate_puzzle(9, 42);
        CHECK(p.size == 9);
        CHECK(p.box_size == 3);
        CHECK(validate_puzzle(p));
    }
    SUBCASE("same seed, same grid") {
        CHECK(generate_puzzle(16, 99) == generate_puzzle(16, 99));
    }
    SUBCASE("different seeds differ") {
        CHECK(generate_puzzle(9, 1) != generate_puzzle(9, 2));
    }
    SUBCASE("entropy-seeded calls differ") {
        CHECK(generate_puzzle(25) != generate_puzzle(25));
    }
    SUBCASE("shuffles actually move the canonical grid") {
        CHECK(generate_puzzle(9, 5) != canonical_puzzle(9));
    }
    SUBCASE("unsupported sizes") {
        for (int bad : {0, 4, 7, 12, 36}) {
            CHECK(code_of([bad] { generate_puzzle(bad, 1); }) == ErrorCode::UnsupportedSize);
        }
    }
}

TEST_CASE("1000 seeded generations per size agree with the brute-force oracle") {
    for (int n : kSupportedSizes) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const auto p = generate_puzzle(n, seed * 0x9E3779B97F4A7C15ULL + 17);
            REQUIRE(oracle::brute_force_valid(p));
            REQUIRE(validate_puzzle(p));
        }
    }
}

TEST_CASE("validate_puzzle rejects broken grids") {
    auto p = canonical_puzzle(9);
    SUBCASE("swapping two cells of a row") {
        std::swap(p.cells[0], p.cells[1]);
        CHECK_FALSE(oracle::brute_force_valid(p));
        CHECK_FALSE(validate_puzzle(p));
    }
    SUBCASE("all ones") {
        std::fill(p.cells.begin(), p.cells.end(), 1);
        CHECK_FALSE(validate_puzzle(p));
    }
    SUBCASE("value out of range") {
        p.cells[40] = 10;
        CHECK_FALSE(validate_puzzle(p));
    }
    SUBCASE("malformed dimensions") {
        p.cells.pop_back();
        CHECK_FALSE(validate_puzzle(p));
        CHECK_FALSE(validate_puzzle(Puzzle{}));
        CHECK_FALSE(validate_puzzle(Puzzle{8, 3, std::vector<int>(64, 1)}));
    }
    SUBCASE("latin square that breaks the boxes") {
        // cells[r][c] = (r + c) mod 9 + 1: rows and columns fine, boxes not
        Puzzle latin{9, 3, {}};
        for (int r = 0; r < 9; ++r) {
            for (int c = 0; c < 9; ++c) {
                latin.cells.push_back((r + c) % 9 + 1);
            }
        }
        CHECK_FALSE(oracle::brute_force_valid(latin));
        CHECK_FALSE(validate_puzzle(latin));
    }
}

TEST_CASE("serialize / parse") {
    SUBCASE("roundtrip generated puzzles") {
        for (int n : kSupportedSizes) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const auto p = generate_puzzle(n, seed);
                CHECK(parse_puzzle(serialize_puzzle(p)) == p);
            }
        }
    }
    SUBCASE("text layout") {
        const auto text = serialize_puzzle(canonical_puzzle(9));
        CHECK(text.starts_with("9\n1 2 3 4 5 6 7 8 9\n4 5 6"));
        CHECK(text.back() == '\n');
        CHECK(std::count(text.begin(), text.end(), '\n') == 10);
    }
    SUBCASE("tolerates CRLF and trailing blank lines") {
        std::string text = serialize_puzzle(canonical_puzzle(9));
        std::string crlf;
        for (char c : text) {
            if (c == '\n') crlf += '\r';
            crlf += c;
        }
        CHECK(parse_puzzle(crlf + "\n\n") == canonical_puzzle(9));
    }
    SUBCASE("80 values for N=9") {
        std::string text = serialize_puzzle(canonical_puzzle(9));
        text.erase(text.rfind(' '), 2);  // drop the last value of the last row
        CHECK(code_of([&] { parse_puzzle(text); }) == ErrorCode::ParseError);
    }
    SUBCASE("malformed inputs") {
        for (const std::string& bad : std::vector<std::string>{"", "nine\n", "7\n", "9\n1 2 3\n", "9\n" + std::string(9, 'x')}) {
            CHECK(code_of([&] { parse_puzzle(bad); }) == ErrorCode::ParseError);
        }
        std::string text = serialize_puzzle(canonical_puzzle(9));
        text.replace(0, 2, "9\n-");
        CHECK(code_of([&] { parse_puzzle(text); }) == ErrorCode::ParseError);
    }
    SUBCASE("well-formed all-ones grid is InvalidPuzzle") {
        std::string text = "9\n";
        for (int r = 0; r < 9; ++r) {
            text += "1 1 1 1 1 1 1 1 1\n";
        }
        CHECK(code_of([&] { parse_puzzle(text); }) == ErrorCode::InvalidPuzzle);
    }
}

TEST_CASE("SeededRng::below stays in range and covers it") {
    SeededRng rng(123);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        ++seen[v];
    }
    for (int c : seen) {
        CHECK(c > 800);
    }
}
