#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "examsim/service/api.hpp"

namespace examsim::service {

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One line per request: method, path, status, duration.
using AccessLog = std::function<void(const std::string& line)>;

// Serves an Api over HTTP/1.1, plus static files when `static_dir` is set.
class HttpServer {
 public:
  explicit HttpServer(Api& api, std::optional<std::filesystem::path> static_dir = {},
                      AccessLog log = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws BindError.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();
  void wait_until_ready();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace examsim::service
