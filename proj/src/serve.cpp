#include "aztext/serve.hpp"

#include <cstdio>

#include <httplib.h>
#include <json.hpp>

#include "aztext/errors.hpp"

namespace aztext {

namespace {

constexpr char kJsonType[] = "application/json; charset=utf-8";

void reply_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, status, {{"error", message}});
}

}  // namespace

void attach_routes(httplib::Server& server, const TrainedModel& model,
                   const ServeOptions& options) {
  server.set_payload_max_length(options.max_body_bytes);

  server.Post("/v1/predict", [&model](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      reply_error(res, 400, "body must be a JSON object");
      return;
    }
    auto it = body.find("text");
    if (it == body.end() || !it->is_string()) {
      reply_error(res, 400, "missing string member: text");
      return;
    }
    try {
      Prediction pred = predict_text(model, it->get<std::string>());
      nlohmann::ordered_json scores = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < model.class_names.size(); ++c) {
        scores[model.class_names[c]] = pred.scores[c];
      }
      reply_json(res, 200,
                 {{"category", pred.class_name},
                  {"scores", std::move(scores)},
                  {"model_kind", model_kind_name(model.kind())}});
    } catch (const EmptyInput&) {
      reply_error(res, 422, "empty_input");
    }
  });

  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, {{"status", "ok"}});
  });

  server.Get("/v1/model", [&model](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200,
               {{"model_kind", model_kind_name(model.kind())},
                {"vectorizer", vectorizer_kind_name(model.vectorizer)},
                {"classes", model.class_names},
                {"vocabulary_size", model.vocab.size()},
                {"format_version", model.format_version}});
  });
}

int run_server(const TrainedModel& model, const ServeOptions& options) {
  httplib::Server server;
  attach_routes(server, model, options);
  if (!server.bind_to_port(options.bind, options.port)) {
    std::fprintf(stderr, "error: cannot bind %s:%d\n", options.bind.c_str(), options.port);
    return 1;
  }
  std::fprintf(stderr, "serving on http://%s:%d\n", options.bind.c_str(), options.port);
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace aztext
