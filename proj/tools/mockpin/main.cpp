// Runs the mock pinning service in the foreground until stdin closes.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hexe/mock_pin_server.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Mock IPFS pinning service and gateway"};
    hexe::ipfs::MockPinOptions options;
    app.add_option("--port", options.port, "Port to listen on (0 = any free port)");
    app.add_option("--host", options.host, "Address to bind");
    app.add_option("--api-key", options.api_key, "Accepted pinata_api_key");
    app.add_option("--api-secret", options.api_secret, "Accepted pinata_secret_api_key");
    app.add_option("--max-bytes", options.max_payload_bytes, "Largest accepted upload");
    CLI11_PARSE(app, argc, argv);

    hexe::ipfs::MockPinServer server(options);
    std::cout << server.base_url() << std::endl;
    std::string line;
    while (std::getline(std::cin, line)) {
    }
    return 0;
}
