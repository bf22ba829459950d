#pragma once

#include <functional>
#include <iosfwd>

#include "examsim/service/config.hpp"
#include "examsim/service/http_server.hpp"

namespace examsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitBind = 3,
  kExitProvider = 4,
};

struct CliEnvironment {
  service::EnvLookup env = service::process_env();
  // Called once `serve` is listening. When unset, SIGINT and SIGTERM stop
  // the server.
  std::function<void(service::HttpServer&, int port)> on_listening;
};

// Entry point of the `examsim` tool: serve, chat, ingest, replay.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err, const CliEnvironment& environment = {});

}  // namespace examsim::cli
