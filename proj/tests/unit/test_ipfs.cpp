#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hexe/error.hpp"
#include "hexe/ipfs.hpp"
#include "hexe/mock_pin_server.hpp"

using namespace hexe;
using namespace hexe::ipfs;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

IpfsConfig config_for(const MockPinServer& server) {
    IpfsConfig cfg;
    cfg.api_base_url = server.base_url();
    cfg.gateway_base_url = server.base_url();
    cfg.api_key = "mock-key";
    cfg.api_secret = "mock-secret";
    cfg.timeout_seconds = 10;
    cfg.initial_backoff_ms = 5;
    return cfg;
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected hexe::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("sha256_hex known vectors") {
    CHECK(sha256_hex("", 0) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc", 3) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gateway_url") {
    IpfsConfig cfg;
    cfg.gateway_base_url = "http://gw.example";
    CHECK(gateway_url(cfg, "abc") == "http://gw.example/ipfs/abc");
}

TEST_CASE("pin and fetch roundtrip") {
    MockPinServer server;
    const auto cfg = config_for(server);
    const auto data = random_bytes(100'000, 1);

    const auto receipt = pin_file(cfg, data, "a.enc.wav");
    CHECK(receipt.cid == sha256_hex(data.data(), data.size()));
    CHECK(receipt.size == data.size());
    CHECK(receipt.gateway_url == gateway_url(cfg, receipt.cid));
    CHECK(server.pinned_count() == 1);

    CHECK(fetch_cid(cfg, receipt.cid) == data);
    CHECK(fetch_cid(cfg, receipt.cid, data.size()) == data);

    SUBCASE("pinning identical bytes twice gives the same CID") {
        CHECK(pin_file(cfg, data, "other-name").cid == receipt.cid);
        CHECK(server.pinned_count() == 1);
    }
    SUBCASE("streaming upload from disk") {
        const auto path = std::filesystem::temp_directory_path() / "hexe_ipfs_pin_path.bin";
        {
            std::ofstream out(path, std::ios::binary);
            out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        }
        CHECK(pin_path(cfg, path, "disk").cid == receipt.cid);
        std::filesystem::remove(path);
    }
    SUBCASE("expected size mismatch") {
        CHECK(code_of([&] { fetch_cid(cfg, receipt.cid, data.size() + 1); }) == ErrorCode::IntegrityMismatch);
    }
}

TEST_CASE("credentials") {
    MockPinServer server;
    auto cfg = config_for(server);
    const auto data = random_bytes(64, 2);
    cfg.api_secret = "wrong";
    CHECK(code_of([&] { pin_file(cfg, data, "x"); }) == ErrorCode::AuthFailed);
    cfg.api_key.clear();
    CHECK(code_of([&] { pin_file(cfg, data, "x"); }) == ErrorCode::AuthFailed);
    CHECK(server.pinned_count() == 0);
}

TEST_CASE("empty payload is rejected locally") {
    MockPinServer server;
    const auto cfg = config_for(server);
    CHECK(code_of([&] { pin_file(cfg, std::span<const std::uint8_t>{}, "x"); }) == ErrorCode::InvalidArgument);
    CHECK(server.request_count() == 0);
}

TEST_CASE("transient failures are retried") {
    MockPinServer server;
    const auto cfg = config_for(server);
    const auto data = random_bytes(1000, 3);

    server.fail_next(2, 503);
    const auto receipt = pin_file(cfg, data, "x");
    CHECK(receipt.cid == sha256_hex(data.data(), data.size()));
    CHECK(server.request_count() == 3);

    server.fail_next(1, 502);
    CHECK(fetch_cid(cfg, receipt.cid) == data);

    server.fail_next(100, 503);
    CHECK(code_of([&] { pin_file(cfg, data, "x"); }) == ErrorCode::ServiceUnavailable);
}

TEST_CASE("unreachable service") {
    IpfsConfig cfg;
    {
        MockPinServer server;
        cfg = config_for(server);
    }
    cfg.max_retries = 1;
    const auto data = random_bytes(10, 4);
    CHECK(code_of([&] { pin_file(cfg, data, "x"); }) == ErrorCode::ServiceUnavailable);
}

TEST_CASE("unknown CID") {
    MockPinServer server;
    const auto cfg = config_for(server);
    CHECK(code_of([&] { fetch_cid(cfg, std::string(64, '0')); }) == ErrorCode::NotFound);
}

TEST_CASE("truncated body is detected") {
    MockPinServer server;
    const auto cfg = config_for(server);
    const auto data = random_bytes(200'000, 5);
    const auto receipt = pin_file(cfg, data, "x");
    server.set_truncate_fetches(true);
    CHECK(code_of([&] { fetch_cid(cfg, receipt.cid); }) == ErrorCode::IntegrityMismatch);
    server.set_truncate_fetches(false);
    CHECK(fetch_cid(cfg, receipt.cid) == data);
}

TEST_CASE("payload limit") {
    MockPinOptions opts;
    opts.max_payload_bytes = 1000;
    MockPinServer server(opts);
    const auto cfg = config_for(server);
    CHECK(code_of([&] { pin_file(cfg, random_bytes(5000, 6), "big"); }) == ErrorCode::PayloadTooLarge);
}

TEST_CASE("35 MB roundtrip streams to a sink") {
    MockPinServer server;
    const auto cfg = config_for(server);
    const auto data = random_bytes(35'200'000, 7);
    const auto receipt = pin_file(cfg, data, "large");
    std::ostringstream sink;
    const auto written = fetch_cid_to(cfg, receipt.cid, sink, data.size());
    CHECK(written == data.size());
    const auto got = sink.str();
    CHECK(sha256_hex(got.data(), got.size()) == receipt.cid);
}

TEST_CASE("config from environment") {
    const auto path = std::filesystem::temp_directory_path() / "hexe_ipfs_config.json";
    {
        std::ofstream out(path);
        out << R"({"apiKey":"k1","apiSecret":"s1","apiBaseUrl":"http://api","gatewayBaseUrl":"http://gw"})";
    }
    ::setenv("HEXE_IPFS_CONFIG", path.c_str(), 1);
    ::setenv("HEXE_IPFS_SECRET", "s2", 1);
    const auto cfg = config_from_environment();
    CHECK(cfg.api_key == "k1");
    CHECK(cfg.api_secret == "s2");
    CHECK(cfg.api_base_url == "http://api");
    CHECK(cfg.gateway_base_url == "http://gw");
    ::unsetenv("HEXE_IPFS_CONFIG");
    ::unsetenv("HEXE_IPFS_SECRET");
    std::filesystem::remove(path);

    const auto defaults = config_from_environment();
    CHECK(defaults.api_base_url == kDefaultApiBaseUrl);
}
