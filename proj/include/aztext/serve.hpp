#pragma once

#include <cstddef>
#include <string>

#include "aztext/model_io.hpp"

namespace httplib {
class Server;
}

namespace aztext {

struct ServeOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::size_t max_body_bytes = 1024 * 1024;
};

// Registers POST /v1/predict, GET /v1/health, GET /v1/model and the request
// size limit on an existing server. The model must outlive the server and is
// never mutated; handlers are safe to run concurrently.
void attach_routes(httplib::Server& server, const TrainedModel& model,
                   const ServeOptions& options);

// Loads nothing itself: binds, announces on standard error, and serves until
// stopped. Returns 0 on clean shutdown, 1 when the bind fails.
int run_server(const TrainedModel& model, const ServeOptions& options);

}  // namespace aztext
