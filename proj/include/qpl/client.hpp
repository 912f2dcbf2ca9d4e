#pragma once

#include <string>
#include <vector>

namespace qpl {

/// Chat-completion endpoint. The key itself is resolved by the caller from
/// the environment variable named here.
struct ClientConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-3.5-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  int timeout_seconds = 60;
};

struct QdResult {
  std::vector<std::string> steps;
  std::string raw;  // message content as returned
};

/// POSTs `{model, messages: [{role: "user", content: prompt}]}` to
/// `<base_url>/chat/completions` and splits `choices[0].message.content`
/// into steps. Throws TransportError for connection failures and non-2xx
/// statuses, MalformedResponse for unexpected bodies or step-free content.
QdResult generate_qd(const std::string& prompt, const ClientConfig& config,
                     const std::string& api_key = "");

}  // namespace qpl
