#include "hexe/mock_pin_server.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "hexe/error.hpp"

namespace hexe::ipfs {

std::string sha256_hex(const void* data, std::size_t size) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0x0F]);
    }
    return out;
}

struct MockPinServer::Impl {
    MockPinOptions options;
    httplib::Server server;
    std::thread worker;
    int port = 0;

    mutable std::mutex mutex;
    std::map<std::string, std::shared_ptr<const std::string>> store;
    int faults_left = 0;
    int fault_status = 503;
    bool truncate = false;
    std::size_t requests = 0;

    // Counts the request and reports the injected status, if any.
    std::optional<int> take_fault() {
        std::lock_guard lock(mutex);
        ++requests;
        if (faults_left > 0) {
            --faults_left;
            return fault_status;
        }
        return std::nullopt;
    }

    static void reply_json(httplib::Response& res, int status, const nlohmann::json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    void handle_pin(const httplib::Request& req, httplib::Response& res, const httplib::ContentReader& reader) {
        const auto fault = take_fault();

        // The body is always drained so the client sees the status rather
        // than a reset connection.
        std::string file;
        bool in_file = false;
        bool saw_file = false;
        std::uint64_t total = 0;
        if (req.is_multipart_form_data()) {
            reader(
                [&](const httplib::MultipartFormData& part) {
                    in_file = part.name == "file";
                    saw_file = saw_file || in_file;
                    return true;
                },
                [&](const char* data, std::size_t n) {
                    total += n;
                    if (in_file && total <= options.max_payload_bytes) {
                        file.append(data, n);
                    }
                    return true;
                });
        } else {
            reader([&](const char*, std::size_t n) {
                total += n;
                return true;
            });
        }

        if (fault) {
            reply_json(res, *fault, {{"error", "injected fault"}});
            return;
        }
        if (req.get_header_value("pinata_api_key") != options.api_key ||
            req.get_header_value("pinata_secret_api_key") != options.api_secret) {
            reply_json(res, 401, {{"error", "invalid credentials"}});
            return;
        }
        if (total > options.max_payload_bytes) {
            reply_json(res, 413, {{"error", "payload too large"}});
            return;
        }
        if (!saw_file || file.empty()) {
            reply_json(res, 400, {{"error", "multipart field 'file' missing or empty"}});
            return;
        }

        const std::string cid = sha256_hex(file.data(), file.size());
        const auto size = file.size();
        {
            std::lock_guard lock(mutex);
            store.emplace(cid, std::make_shared<const std::string>(std::move(file)));
        }
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        reply_json(res, 200,
                   {{"IpfsHash", cid},
                    {"PinSize", size},
                    {"Timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()}});
    }

    void handle_fetch(const httplib::Request& req, httplib::Response& res) {
        if (const auto fault = take_fault()) {
            res.status = *fault;
            return;
        }
        std::shared_ptr<const std::string> content;
        bool cut = false;
        {
            std::lock_guard lock(mutex);
            const auto it = store.find(req.matches[1].str());
            if (it != store.end()) {
                content = it->second;
            }
            cut = truncate;
        }
        if (!content) {
            res.status = 404;
            res.set_content("not pinned", "text/plain");
            return;
        }

        const std::size_t limit = cut ? content->size() / 2 : content->size();
        res.set_content_provider(content->size(), "application/octet-stream",
                                 [content, limit](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
                                     if (offset >= limit) {
                                         return false;
                                     }
                                     const std::size_t n = std::min({length, limit - offset, std::size_t{1} << 16});
                                     return sink.write(content->data() + offset, n);
                                 });
    }
};

MockPinServer::MockPinServer(MockPinOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = std::move(options);
    auto* impl = impl_.get();
    impl->server.Post("/pinning/pinFileToIPFS",
                      [impl](const httplib::Request& req, httplib::Response& res, const httplib::ContentReader& r) {
                          impl->handle_pin(req, res, r);
                      });
    impl->server.Get(R"(/ipfs/([^/]+))",
                     [impl](const httplib::Request& req, httplib::Response& res) { impl->handle_fetch(req, res); });

    if (impl->options.port == 0) {
        impl->port = impl->server.bind_to_any_port(impl->options.host);
    } else if (impl->server.bind_to_port(impl->options.host, impl->options.port)) {
        impl->port = impl->options.port;
    }
    if (impl->port <= 0) {
        throw Error(ErrorCode::ServiceUnavailable, "mock pin server could not bind " + impl->options.host);
    }
    impl->worker = std::thread([impl] { impl->server.listen_after_bind(); });
    impl->server.wait_until_ready();
}

MockPinServer::~MockPinServer() {
    impl_->server.stop();
    if (impl_->worker.joinable()) {
        impl_->worker.join();
    }
}

int MockPinServer::port() const noexcept {
    return impl_->port;
}

std::string MockPinServer::base_url() const {
    return "http://" + impl_->options.host + ":" + std::to_string(impl_->port);
}

void MockPinServer::fail_next(int count, int status) {
    std::lock_guard lock(impl_->mutex);
    impl_->faults_left = count;
    impl_->fault_status = status;
}

void MockPinServer::set_truncate_fetches(bool enabled) {
    std::lock_guard lock(impl_->mutex);
    impl_->truncate = enabled;
}

std::size_t MockPinServer::pinned_count() const {
    std::lock_guard lock(impl_->mutex);
    return impl_->store.size();
}

std::size_t MockPinServer::request_count() const {
    std::lock_guard lock(impl_->mutex);
    return impl_->requests;
}

}  // namespace hexe::ipfs
