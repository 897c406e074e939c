#include "scmix/eval/client.hpp"

#include <cstdlib>
#include <thread>

#include <openssl/evp.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

namespace scmix::eval {

using nlohmann::json;

void EndpointConfig::validate() const {
  if (base_url.empty()) throw std::invalid_argument("endpoint base_url is required");
  if (!base_url.starts_with("http://") && !base_url.starts_with("https://")) {
    throw std::invalid_argument("endpoint base_url must start with http:// or https://");
  }
  if (model_name.empty()) throw std::invalid_argument("endpoint model name is required");
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
  if (retry.max_attempts < 1) throw std::invalid_argument("retry max_attempts must be >= 1");
  if (retry.backoff_base_ms < 0) throw std::invalid_argument("retry backoff must be >= 0");
  if (max_output_tokens < 1) throw std::invalid_argument("max_output_tokens must be >= 1");
  if (timeout_s < 1) throw std::invalid_argument("timeout_s must be >= 1");
  if (!extra.is_object()) throw std::invalid_argument("endpoint extra parameters must be an object");
  if (!api_key_env.empty() && std::getenv(api_key_env.c_str()) == nullptr) {
    throw std::invalid_argument("API key environment variable '" + api_key_env + "' is not set");
  }
}

EndpointConfig EndpointConfig::from_json(const json& j) {
  EndpointConfig e;
  e.base_url = j.value("base_url", e.base_url);
  e.model_name = j.value("model", e.model_name);
  e.api_key_env = j.value("api_key_env", e.api_key_env);
  e.temperature = j.value("temperature", e.temperature);
  e.max_output_tokens = j.value("max_output_tokens", e.max_output_tokens);
  if (j.contains("extra")) e.extra = j.at("extra");
  e.max_in_flight = j.value("max_in_flight", e.max_in_flight);
  e.timeout_s = j.value("timeout_s", e.timeout_s);
  if (j.contains("retry")) {
    const json& r = j.at("retry");
    e.retry.max_attempts = r.value("max_attempts", e.retry.max_attempts);
    e.retry.backoff_base_ms = r.value("backoff_base_ms", e.retry.backoff_base_ms);
  }
  return e;
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length must be a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw std::invalid_argument("invalid base64");
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

json build_request(std::string_view prompt, const RgbImage& image, const EndpointConfig& endpoint) {
  const std::string uri = "data:image/png;base64," + base64_encode(encode_png(image));
  json payload = {
      {"model", endpoint.model_name},
      {"temperature", endpoint.temperature},
      {"max_tokens", endpoint.max_output_tokens},
      {"messages",
       json::array({{{"role", "user"},
                     {"content", json::array({{{"type", "text"}, {"text", std::string(prompt)}},
                                              {{"type", "image_url"}, {"image_url", {{"url", uri}}}}})}}})},
  };
  for (const auto& [key, value] : endpoint.extra.items()) payload[key] = value;
  return payload;
}

std::string extract_response_text(const json& body) {
  const json& content = body.at("choices").at(0).at("message").at("content");
  if (content.is_string()) return content.get<std::string>();
  if (content.is_array()) {
    std::string text;
    for (const auto& part : content) {
      if (part.value("type", "") == "text") text += part.value("text", "");
    }
    return text;
  }
  if (content.is_null()) return {};
  throw std::runtime_error("unexpected message content type");
}

ChatClient::ChatClient(EndpointConfig endpoint) : endpoint_(std::move(endpoint)) {
  endpoint_.validate();
  const std::size_t scheme_end = endpoint_.base_url.find("://") + 3;
  const std::size_t path_start = endpoint_.base_url.find('/', scheme_end);
  scheme_host_port_ = endpoint_.base_url.substr(0, path_start);
  path_ = path_start == std::string::npos ? std::string() : endpoint_.base_url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
  if (!endpoint_.api_key_env.empty()) api_key_ = std::getenv(endpoint_.api_key_env.c_str());
}

ChatClient::~ChatClient() = default;

QueryResult ChatClient::query(const json& payload) const {
  const std::string body = payload.dump();
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  QueryResult result;
  for (int attempt = 1; attempt <= endpoint_.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      const auto wait = std::chrono::milliseconds(static_cast<long long>(endpoint_.retry.backoff_base_ms) << (attempt - 2));
      std::this_thread::sleep_for(wait);
    }
    result.attempts = attempt;

    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(endpoint_.timeout_s, 0);
    client.set_read_timeout(endpoint_.timeout_s, 0);
    client.set_write_timeout(endpoint_.timeout_s, 0);

    const auto start = std::chrono::steady_clock::now();
    const auto res = client.Post(path_, headers, body, "application/json");
    result.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (!res) {
      result.error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
      result.error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      result.error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
      return result;
    }
    try {
      result.text = extract_response_text(json::parse(res->body));
      result.ok = true;
      result.error.clear();
    } catch (const std::exception& e) {
      result.error = std::string("bad response body: ") + e.what();
    }
    return result;
  }
  return result;
}

}  // namespace scmix::eval
