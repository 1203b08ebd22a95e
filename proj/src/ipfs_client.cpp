#include "hexe/ipfs.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "hexe/error.hpp"

namespace hexe::ipfs {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path below the origin, without trailing slash
};

Endpoint split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "URL '" + url + "' has no scheme");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    ep.origin = url.substr(0, path_start);
    if (path_start != std::string::npos) {
        ep.prefix = url.substr(path_start);
        while (!ep.prefix.empty() && ep.prefix.back() == '/') {
            ep.prefix.pop_back();
        }
    }
    return ep;
}

std::unique_ptr<httplib::Client> make_client(const IpfsConfig& cfg, const Endpoint& ep) {
    auto client = std::make_unique<httplib::Client>(ep.origin);
    client->set_connection_timeout(cfg.timeout_seconds, 0);
    client->set_read_timeout(cfg.timeout_seconds, 0);
    client->set_write_timeout(cfg.timeout_seconds, 0);
    client->set_follow_location(true);
    return client;
}

bool is_transient(int status) {
    return status == 429 || status >= 500;
}

struct Attempt {
    int status = 0;  // 0 when the transport failed
    std::string body;
    std::string transport_error;
};

// Runs `attempt` until it yields a non-transient answer or the retry budget is
// spent. The delay doubles after every failed try.
Attempt with_retries(const IpfsConfig& cfg, const std::function<Attempt()>& attempt) {
    auto delay = std::chrono::milliseconds(cfg.initial_backoff_ms);
    for (int tries = 0;; ++tries) {
        Attempt a = attempt();
        const bool transient = a.status == 0 || is_transient(a.status);
        if (!transient || tries >= cfg.max_retries) {
            return a;
        }
        std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

std::string describe(const Attempt& a) {
    return a.status == 0 ? "transport error: " + a.transport_error : "HTTP " + std::to_string(a.status);
}

void require_credentials(const IpfsConfig& cfg) {
    if (cfg.api_key.empty() || cfg.api_secret.empty()) {
        throw Error(ErrorCode::AuthFailed, "no pinning-service credentials configured "
                                           "(set HEXE_IPFS_KEY and HEXE_IPFS_SECRET)");
    }
}

PinReceipt pin_with_provider(const IpfsConfig& cfg, const std::string& name, std::uint64_t size,
                             httplib::ContentProviderWithoutLength provider) {
    require_credentials(cfg);
    const Endpoint api = split_url(cfg.api_base_url);
    const httplib::Headers headers = {
        {"pinata_api_key", cfg.api_key},
        {"pinata_secret_api_key", cfg.api_secret},
    };
    const httplib::MultipartFormDataProviderItems items = {
        {"file", provider, name, "audio/wav"},
    };

    const Attempt a = with_retries(cfg, [&] {
        auto client = make_client(cfg, api);
        auto res = client->Post(api.prefix + "/pinning/pinFileToIPFS", headers, httplib::MultipartFormDataItems{},
                                items);
        Attempt out;
        if (!res) {
            out.transport_error = httplib::to_string(res.error());
            return out;
        }
        out.status = res->status;
        out.body = res->body;
        return out;
    });

    if (a.status == 401 || a.status == 403) {
        throw Error(ErrorCode::AuthFailed, "pinning service rejected the credentials");
    }
    if (a.status == 413) {
        throw Error(ErrorCode::PayloadTooLarge, std::to_string(size) + " bytes exceeds the service limit");
    }
    if (a.status < 200 || a.status >= 300) {
        throw Error(ErrorCode::ServiceUnavailable, "pin failed after " + std::to_string(cfg.max_retries + 1) +
                                                       " attempts (" + describe(a) + ")");
    }

    const auto json = nlohmann::json::parse(a.body, nullptr, false);
    if (json.is_discarded() || !json.contains("IpfsHash") || !json["IpfsHash"].is_string() ||
        json["IpfsHash"].get<std::string>().empty()) {
        throw Error(ErrorCode::ServiceUnavailable, "pin response has no IpfsHash field");
    }

    PinReceipt receipt;
    receipt.cid = json["IpfsHash"].get<std::string>();
    receipt.size = json.contains("PinSize") && json["PinSize"].is_number_unsigned()
                       ? json["PinSize"].get<std::uint64_t>()
                       : size;
    receipt.timestamp_pinned = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
            .count());
    receipt.gateway_url = gateway_url(cfg, receipt.cid);
    return receipt;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

constexpr std::size_t kUploadChunk = 64 * 1024;

}  // namespace

IpfsConfig config_from_environment() {
    IpfsConfig cfg;
    if (const char* path = std::getenv("HEXE_IPFS_CONFIG"); path != nullptr && *path != '\0') {
        std::ifstream in(path);
        if (!in) {
            throw Error(ErrorCode::InvalidArgument, std::string("cannot open HEXE_IPFS_CONFIG file ") + path);
        }
        const auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw Error(ErrorCode::ParseError, std::string("HEXE_IPFS_CONFIG file is not a JSON object: ") + path);
        }
        cfg.api_key = j.value("apiKey", cfg.api_key);
        cfg.api_secret = j.value("apiSecret", cfg.api_secret);
        cfg.api_base_url = j.value("apiBaseUrl", cfg.api_base_url);
        cfg.gateway_base_url = j.value("gatewayBaseUrl", cfg.gateway_base_url);
        cfg.timeout_seconds = j.value("timeoutSeconds", cfg.timeout_seconds);
        cfg.max_retries = j.value("maxRetries", cfg.max_retries);
    }
    cfg.api_key = env_or("HEXE_IPFS_KEY", cfg.api_key);
    cfg.api_secret = env_or("HEXE_IPFS_SECRET", cfg.api_secret);
    cfg.api_base_url = env_or("HEXE_IPFS_API", cfg.api_base_url);
    cfg.gateway_base_url = env_or("HEXE_IPFS_GATEWAY", cfg.gateway_base_url);
    if (cfg.timeout_seconds <= 0) {
        throw Error(ErrorCode::InvalidArgument, "timeoutSeconds must be positive");
    }
    return cfg;
}

std::string gateway_url(const IpfsConfig& cfg, const std::string& cid) {
    std::string base = cfg.gateway_base_url;
    while (!base.empty() && base.back() == '/') {
        base.pop_back();
    }
    return base + "/ipfs/" + cid;
}

PinReceipt pin_file(const IpfsConfig& cfg, std::span<const std::uint8_t> bytes, const std::string& name) {
    if (bytes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "refusing to pin an empty payload");
    }
    return pin_with_provider(cfg, name, bytes.size(), [bytes](std::size_t offset, httplib::DataSink& sink) {
        if (offset >= bytes.size()) {
            sink.done();
            return true;
        }
        const std::size_t n = std::min(kUploadChunk, bytes.size() - offset);
        return sink.write(reinterpret_cast<const char*>(bytes.data() + offset), n);
    });
}

PinReceipt pin_path(const IpfsConfig& cfg, const std::filesystem::path& path, const std::string& name) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) {
        throw Error(ErrorCode::InvalidArgument, "cannot stat " + path.string());
    }
    if (size == 0) {
        throw Error(ErrorCode::InvalidArgument, "refusing to pin an empty payload");
    }
    auto in = std::make_shared<std::ifstream>(path, std::ios::binary);
    if (!*in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
    }
    return pin_with_provider(cfg, name, size, [in, size](std::size_t offset, httplib::DataSink& sink) {
        if (offset >= size) {
            sink.done();
            return true;
        }
        std::vector<char> buf(std::min<std::size_t>(kUploadChunk, size - offset));
        in->clear();
        in->seekg(static_cast<std::streamoff>(offset));
        in->read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in->gcount() <= 0) {
            return false;
        }
        return sink.write(buf.data(), static_cast<std::size_t>(in->gcount()));
    });
}

std::uint64_t fetch_cid_to(const IpfsConfig& cfg, const std::string& cid, std::ostream& sink,
                           std::optional<std::uint64_t> expected_size) {
    if (cid.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty content identifier");
    }
    const Endpoint gw = split_url(cfg.gateway_base_url);
    const std::string path = gw.prefix + "/ipfs/" + cid;

    std::uint64_t received = 0;
    std::optional<std::uint64_t> declared;
    const Attempt a = with_retries(cfg, [&] {
        Attempt out;
        // Once body bytes reached the sink a retry would duplicate them.
        if (received > 0) {
            out.status = -1;
            return out;
        }
        auto client = make_client(cfg, gw);
        auto res = client->Get(
            path, httplib::Headers{},
            [&](const httplib::Response& r) {
                out.status = r.status;
                if (r.has_header("Content-Length")) {
                    declared = std::stoull(r.get_header_value("Content-Length"));
                }
                return r.status == 200;
            },
            [&](const char* data, std::size_t n) {
                sink.write(data, static_cast<std::streamsize>(n));
                received += n;
                return static_cast<bool>(sink);
            });
        // With status 200 this means the body stopped short.
        if (!res && (out.status == 0 || out.status == 200)) {
            out.transport_error = httplib::to_string(res.error());
        }
        return out;
    });

    if (a.status == 404) {
        throw Error(ErrorCode::NotFound, "gateway has no content for " + cid);
    }
    if (a.status == -1 || (a.status == 200 && !a.transport_error.empty())) {
        throw Error(ErrorCode::IntegrityMismatch, "download of " + cid + " ended after " + std::to_string(received) +
                                                      " bytes");
    }
    if (a.status != 200) {
        throw Error(ErrorCode::ServiceUnavailable, "fetch failed after " + std::to_string(cfg.max_retries + 1) +
                                                       " attempts (" + describe(a) + ")");
    }
    if (!sink) {
        throw Error(ErrorCode::InvalidArgument, "could not write fetched content");
    }
    if (declared && *declared != received) {
        throw Error(ErrorCode::IntegrityMismatch, "gateway declared " + std::to_string(*declared) +
                                                      " bytes, received " + std::to_string(received));
    }
    if (expected_size && *expected_size != received) {
        throw Error(ErrorCode::IntegrityMismatch, "expected " + std::to_string(*expected_size) +
                                                      " bytes, received " + std::to_string(received));
    }
    return received;
}

std::vector<std::uint8_t> fetch_cid(const IpfsConfig& cfg, const std::string& cid,
                                    std::optional<std::uint64_t> expected_size) {
    std::ostringstream buffer(std::ios::binary);
    fetch_cid_to(cfg, cid, buffer, expected_size);
    const std::string s = std::move(buffer).str();
    return {s.begin(), s.end()};
}

}  // namespace hexe::ipfs
