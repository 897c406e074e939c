#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scmix/image.hpp"

namespace scmix::eval {

struct RetryPolicy {
  int max_attempts = 3;
  int backoff_base_ms = 500;  // the k-th retry waits base * 2^(k - 1)
};

/// An OpenAI-compatible chat-completions endpoint.
struct EndpointConfig {
  std::string base_url;     // e.g. "http://localhost:8000/v1"
  std::string model_name;
  std::string api_key_env;  // name of the environment variable holding the key; empty for none
  double temperature = 0.0;
  int max_output_tokens = 256;
  nlohmann::json extra = nlohmann::json::object();  // merged into the payload last
  int max_in_flight = 1;
  RetryPolicy retry;
  int timeout_s = 120;

  /// Throws std::invalid_argument on a broken invariant or unset key variable.
  void validate() const;
  static EndpointConfig from_json(const nlohmann::json& j);
};

class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Chat payload with one user message: the prompt text followed by the image as
/// a base64 PNG data URI.
nlohmann::json build_request(std::string_view prompt, const RgbImage& image, const EndpointConfig& endpoint);

/// Text of choices[0].message; throws std::runtime_error on an unexpected body.
std::string extract_response_text(const nlohmann::json& body);

struct QueryResult {
  bool ok = false;
  std::string text;
  std::string error;
  int attempts = 0;
  double latency_ms = 0;
};

/// Thread-safe; one instance can serve every worker of a sweep.
class ChatClient {
 public:
  explicit ChatClient(EndpointConfig endpoint);
  ~ChatClient();
  ChatClient(const ChatClient&) = delete;
  ChatClient& operator=(const ChatClient&) = delete;

  /// Retries 429, 5xx and transport failures per the retry policy. Throws
  /// AuthError on 401/403.
  QueryResult query(const nlohmann::json& payload) const;

  const EndpointConfig& endpoint() const noexcept { return endpoint_; }

 private:
  EndpointConfig endpoint_;
  std::string scheme_host_port_;
  std::string path_;
  std::string api_key_;
};

}  // namespace scmix::eval
