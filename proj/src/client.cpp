#include "qpl/client.hpp"

#include <httplib.h>
#include <json.hpp>

#include "qpl/errors.hpp"
#include "qpl/prompt.hpp"

namespace qpl {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // request path
};

Endpoint endpoint_of(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("base URL lacks a scheme: " + base_url);
  const auto path_start = base_url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  e.path = prefix + "/chat/completions";
  return e;
}

}  // namespace

QdResult generate_qd(const std::string& prompt, const ClientConfig& config,
                     const std::string& api_key) {
  const Endpoint ep = endpoint_of(config.base_url);
  httplib::Client cli(ep.origin);
  if (!cli.is_valid()) throw TransportError("unsupported endpoint " + config.base_url);
  cli.set_connection_timeout(config.timeout_seconds, 0);
  cli.set_read_timeout(config.timeout_seconds, 0);
  cli.set_write_timeout(config.timeout_seconds, 0);

  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

  const nlohmann::json body = {
      {"model", config.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
  auto res = cli.Post(ep.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + config.base_url + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponse(std::string("response is not JSON: ") + e.what());
  }
  const auto* content = [&]() -> const nlohmann::json* {
    if (!doc.is_object() || !doc.contains("choices") || !doc["choices"].is_array() ||
        doc["choices"].empty()) {
      return nullptr;
    }
    const auto& choice = doc["choices"][0];
    if (!choice.is_object() || !choice.contains("message")) return nullptr;
    const auto& msg = choice["message"];
    if (!msg.is_object() || !msg.contains("content") || !msg["content"].is_string()) return nullptr;
    return &msg["content"];
  }();
  if (!content) throw MalformedResponse("response lacks choices[0].message.content");

  QdResult out;
  out.raw = content->get<std::string>();
  out.steps = split_qd_steps(out.raw);
  return out;
}

}  // namespace qpl
