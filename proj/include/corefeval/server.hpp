#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace corefeval {

/// Local HTTP host for the inspector: the bundle at /bundle.json plus an
/// optional directory of static UI assets at /.
class InspectorServer {
 public:
  InspectorServer(std::string bundle_json,
                  std::optional<std::filesystem::path> assets = std::nullopt);
  ~InspectorServer();
  InspectorServer(const InspectorServer&) = delete;
  InspectorServer& operator=(const InspectorServer&) = delete;

  /// Binds before anything is served. Port 0 picks a free port. Returns the
  /// bound port; throws AddressInUse when the port is taken.
  int bind(const std::string& host, int port);

  /// Blocks until stop() is called from another thread.
  void serve();
  void stop();
  /// Blocks until serve() is accepting requests.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace corefeval
