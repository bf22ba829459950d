// Kept in its own translation unit: cpp-httplib is expensive to compile.
#include "examsim/service/http_server.hpp"

#include <httplib.h>

#include <chrono>

namespace examsim::service {

namespace {

constexpr std::size_t kMaxPayloadBytes = 16 * 1024 * 1024;

}  // namespace

struct HttpServer::Impl {
  Api& api;
  AccessLog log;
  httplib::Server server;

  explicit Impl(Api& a, AccessLog l) : api(a), log(std::move(l)) {}

  void serve(const httplib::Request& req, httplib::Response& res) {
    auto started = std::chrono::steady_clock::now();
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    request.authorization = req.get_header_value("Authorization");
    request.content_type = req.get_header_value("Content-Type");
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    request.body = req.body;

    ApiResponse response = api.handle(request);
    res.status = response.status;
    for (const auto& [name, value] : response.headers) res.set_header(name, value);
    res.set_content(response.payload(), response.content_type());

    if (log) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count();
      log(req.method + " " + req.path + " " + std::to_string(response.status) + " " +
          std::to_string(ms) + "ms");
    }
  }
};

HttpServer::HttpServer(Api& api, std::optional<std::filesystem::path> static_dir, AccessLog log)
    : impl_(std::make_unique<Impl>(api, std::move(log))) {
  auto& server = impl_->server;
  server.set_payload_max_length(kMaxPayloadBytes);
  // The library default adds SO_REUSEPORT, which would let a second server
  // share an occupied port silently.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  if (static_dir) server.set_mount_point("/", static_dir->string());
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    impl->serve(req, res);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.Patch(".*", handler);
  server.Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw BindError("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() { impl_->server.wait_until_ready(); }

}  // namespace examsim::service
