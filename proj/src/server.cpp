#include "corefeval/server.hpp"

#include "corefeval/error.hpp"
#include "httplib.h"

namespace corefeval {

namespace {

constexpr const char* kFallbackIndex =
    "<!doctype html><title>corefeval inspector</title>"
    "<p>No inspector assets were given. The bundle is at "
    "<a href=\"/bundle.json\">/bundle.json</a>.</p>\n";

}  // namespace

struct InspectorServer::Impl {
  httplib::Server http;
  std::string bundle;
};

InspectorServer::InspectorServer(std::string bundle_json,
                                 std::optional<std::filesystem::path> assets)
    : impl_(std::make_unique<Impl>()) {
  impl_->bundle = std::move(bundle_json);
  // The library default adds SO_REUSEPORT, which would let a second server
  // share a taken port instead of failing.
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl_->http.Get("/bundle.json", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(impl_->bundle, "application/json");
  });
  if (assets) {
    if (!impl_->http.set_mount_point("/", assets->string()))
      throw Error(ErrorKind::IoError,
                  "assets directory " + assets->string() + " is not readable");
  } else {
    impl_->http.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kFallbackIndex, "text/html");
    });
  }
}

InspectorServer::~InspectorServer() = default;

int InspectorServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::AddressInUse, "no free port on " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port))
    throw Error(ErrorKind::AddressInUse,
                host + ":" + std::to_string(port) + " is already in use");
  return port;
}

void InspectorServer::serve() { impl_->http.listen_after_bind(); }

void InspectorServer::stop() { impl_->http.stop(); }

void InspectorServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace corefeval
