#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace hexe::ipfs {

struct MockPinOptions {
    std::string api_key = "mock-key";
    std::string api_secret = "mock-secret";
    std::uint64_t max_payload_bytes = 64ULL * 1024 * 1024;
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 0;
};

/// In-process stand-in for a pinning service plus gateway.
///
/// POST /pinning/pinFileToIPFS stores the multipart `file` field under the
/// lowercase hex SHA-256 of its bytes and answers {"IpfsHash", "PinSize",
/// "Timestamp"}. GET /ipfs/<cid> serves it back. Credentials are checked
/// against the pinata_* headers. Faults can be injected for tests.
class MockPinServer {
public:
    explicit MockPinServer(MockPinOptions options = {});
    ~MockPinServer();

    MockPinServer(const MockPinServer&) = delete;
    MockPinServer& operator=(const MockPinServer&) = delete;

    int port() const noexcept;
    /// http://host:port, usable as both API and gateway base URL.
    std::string base_url() const;

    /// The next `count` requests (pin or fetch) answer with `status`.
    void fail_next(int count, int status = 503);
    /// While enabled, fetches declare the full Content-Length but close the
    /// connection after sending half of the body.
    void set_truncate_fetches(bool enabled);

    std::size_t pinned_count() const;
    std::size_t request_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Lowercase hex SHA-256, the mock's content identifier.
std::string sha256_hex(const void* data, std::size_t size);

}  // namespace hexe::ipfs
