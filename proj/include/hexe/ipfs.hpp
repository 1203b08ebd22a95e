#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hexe::ipfs {

inline constexpr const char* kDefaultApiBaseUrl = "https://api.pinata.cloud";
inline constexpr const char* kDefaultGatewayBaseUrl = "https://cloudflare-ipfs.com";

/// Pinning-service endpoint and credentials. The key and secret are only ever
/// sent as request headers; they never appear in error messages.
struct IpfsConfig {
    std::string api_base_url = kDefaultApiBaseUrl;
    std::string gateway_base_url = kDefaultGatewayBaseUrl;
    std::string api_key;
    std::string api_secret;
    int timeout_seconds = 60;
    int max_retries = 3;
    /// First retry delay; doubles on every further attempt.
    int initial_backoff_ms = 250;
};

/// Reads HEXE_IPFS_CONFIG (a JSON file with apiKey, apiSecret, apiBaseUrl,
/// gatewayBaseUrl), then lets HEXE_IPFS_KEY, HEXE_IPFS_SECRET, HEXE_IPFS_API
/// and HEXE_IPFS_GATEWAY override individual fields.
IpfsConfig config_from_environment();

struct PinReceipt {
    std::string cid;
    std::uint64_t size = 0;
    std::uint64_t timestamp_pinned = 0;
    std::string gateway_url;
};

/// `{gateway}/ipfs/{cid}`.
std::string gateway_url(const IpfsConfig& cfg, const std::string& cid);

/// POSTs the bytes as multipart field `file` to {api}/pinning/pinFileToIPFS.
/// 5xx and connection failures are retried with exponential backoff.
/// Throws AuthFailed, PayloadTooLarge or ServiceUnavailable.
PinReceipt pin_file(const IpfsConfig& cfg, std::span<const std::uint8_t> bytes, const std::string& name);

/// Same as pin_file() but streams the upload from disk.
PinReceipt pin_path(const IpfsConfig& cfg, const std::filesystem::path& path, const std::string& name);

/// Streams GET {gateway}/ipfs/{cid} into `sink` and returns the byte count.
/// Throws NotFound, ServiceUnavailable, or IntegrityMismatch when the body is
/// shorter than its Content-Length or differs from `expected_size`.
std::uint64_t fetch_cid_to(const IpfsConfig& cfg, const std::string& cid, std::ostream& sink,
                           std::optional<std::uint64_t> expected_size = std::nullopt);

std::vector<std::uint8_t> fetch_cid(const IpfsConfig& cfg, const std::string& cid,
                                    std::optional<std::uint64_t> expected_size = std::nullopt);

}  // namespace hexe::ipfs
