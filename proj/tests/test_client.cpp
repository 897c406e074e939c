#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>

#include "fixtures.hpp"
#include "mock_server.hpp"
#include "scmix/eval/client.hpp"
#include "scmix/eval/manifest.hpp"

namespace scmix::eval {
namespace {

using nlohmann::json;
using scmix::testing::MockChatServer;
using scmix::testing::MockReply;

EndpointConfig endpoint_for(const MockChatServer& server) {
  EndpointConfig e;
  e.base_url = server.base_url();
  e.model_name = "mock-vlm";
  e.retry.backoff_base_ms = 5;
  e.timeout_s = 10;
  return e;
}

TEST(Base64, RoundTripsAllLengths) {
  for (std::size_t n = 0; n < 40; ++n) {
    std::vector<std::uint8_t> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<std::uint8_t>(i * 37 + 1);
    EXPECT_EQ(base64_decode(base64_encode(data)), data) << n;
  }
  const std::string hello = "hello";
  EXPECT_EQ(base64_encode({reinterpret_cast<const std::uint8_t*>(hello.data()), hello.size()}), "aGVsbG8=");
  EXPECT_THROW(base64_decode("abc"), std::invalid_argument);
  EXPECT_THROW(base64_decode("ab!="), std::invalid_argument);
}

TEST(BuildRequest, PayloadShape) {
  EndpointConfig e;
  e.model_name = "qwen";
  e.max_output_tokens = 64;
  e.extra = {{"top_p", 0.9}, {"temperature", 0.2}};
  const RgbImage img = scmix::testing::scene(1, 20, 12);
  const std::string prompt = *prompt_preset("animals");
  const json p = build_request(prompt, img, e);

  EXPECT_EQ(p.at("model"), "qwen");
  EXPECT_EQ(p.at("max_tokens"), 64);
  EXPECT_EQ(p.at("top_p"), 0.9);
  EXPECT_EQ(p.at("temperature"), 0.2);  // extra wins
  ASSERT_EQ(p.at("messages").size(), 1u);
  EXPECT_EQ(p.at("messages")[0].at("role"), "user");
  EXPECT_EQ(scmix::testing::request_text(p), prompt);
  EXPECT_EQ(scmix::testing::request_image(p), img);
  EXPECT_EQ(json::parse(p.dump()), p);
}

TEST(BuildRequest, DefaultTemperatureIsZero) {
  const json p = build_request("q", RgbImage(2, 2), EndpointConfig{});
  EXPECT_EQ(p.at("temperature"), 0.0);
}

TEST(ExtractResponse, ContentShapes) {
  EXPECT_EQ(extract_response_text(json::parse(R"({"choices":[{"message":{"content":"a cat"}}]})")), "a cat");
  EXPECT_EQ(extract_response_text(json::parse(
                R"({"choices":[{"message":{"content":[{"type":"text","text":"a "},{"type":"text","text":"dog"}]}}]})")),
            "a dog");
  EXPECT_EQ(extract_response_text(json::parse(R"({"choices":[{"message":{"content":null}}]})")), "");
  EXPECT_THROW(extract_response_text(json::parse(R"({"choices":[]})")), std::exception);
}

TEST(EndpointConfig, ValidationAndJson) {
  const json j = json::parse(R"({"base_url":"https://api.example.com/v1","model":"m","max_in_flight":4,
                                  "retry":{"max_attempts":5,"backoff_base_ms":100},"extra":{"seed":1}})");
  const EndpointConfig e = EndpointConfig::from_json(j);
  EXPECT_EQ(e.model_name, "m");
  EXPECT_EQ(e.max_in_flight, 4);
  EXPECT_EQ(e.retry.max_attempts, 5);
  EXPECT_EQ(e.retry.backoff_base_ms, 100);
  EXPECT_EQ(e.extra.at("seed"), 1);
  EXPECT_NO_THROW(e.validate());

  EndpointConfig bad = e;
  bad.max_in_flight = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = e;
  bad.retry.max_attempts = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = e;
  bad.base_url = "ftp://x";
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = e;
  bad.api_key_env = "SCMIX_TEST_SURELY_UNSET_KEY";
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ChatClient, ReturnsMessageText) {
  MockChatServer server([](const json&, int) { return MockReply{200, "a cat"}; });
  ChatClient client(endpoint_for(server));
  const QueryResult r = client.query(build_request("what?", RgbImage(4, 4), client.endpoint()));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.text, "a cat");
  EXPECT_EQ(r.attempts, 1);
  EXPECT_GT(r.latency_ms, 0.0);
}

TEST(ChatClient, RetriesRateLimitThenSucceeds) {
  MockChatServer server([](const json&, int call) { return call < 2 ? MockReply{429, "slow down"} : MockReply{200, "dog"}; });
  ChatClient client(endpoint_for(server));
  const auto start = std::chrono::steady_clock::now();
  const QueryResult r = client.query(build_request("q", RgbImage(2, 2), client.endpoint()));
  const double waited = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.text, "dog");
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(server.calls(), 3);
  EXPECT_GE(waited, 5.0 + 10.0);  // base, then 2 * base
}

TEST(ChatClient, GivesUpAfterMaxAttempts) {
  MockChatServer server([](const json&, int) { return MockReply{500, "boom"}; });
  ChatClient client(endpoint_for(server));
  const QueryResult r = client.query(build_request("q", RgbImage(2, 2), client.endpoint()));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(server.calls(), 3);
  EXPECT_NE(r.error.find("500"), std::string::npos);
}

TEST(ChatClient, ClientErrorsAreNotRetried) {
  MockChatServer server([](const json&, int) { return MockReply{400, "bad request"}; });
  ChatClient client(endpoint_for(server));
  const QueryResult r = client.query(build_request("q", RgbImage(2, 2), client.endpoint()));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(server.calls(), 1);
}

TEST(ChatClient, AuthFailureIsFatal) {
  MockChatServer server([](const json&, int) { return MockReply{401, "no"}; });
  ChatClient client(endpoint_for(server));
  EXPECT_THROW(client.query(build_request("q", RgbImage(2, 2), client.endpoint())), AuthError);
  EXPECT_EQ(server.calls(), 1);
}

TEST(ChatClient, SendsBearerKeyFromEnvironment) {
  ::setenv("SCMIX_TEST_API_KEY", "sk-test-123", 1);
  MockChatServer server([](const json&, int) { return MockReply{200, "ok"}; });
  EndpointConfig e = endpoint_for(server);
  e.api_key_env = "SCMIX_TEST_API_KEY";
  ChatClient client(e);
  ASSERT_TRUE(client.query(build_request("q", RgbImage(2, 2), e)).ok);
  EXPECT_EQ(server.last_auth_header(), "Bearer sk-test-123");
}

TEST(ChatClient, TransportErrorIsRetriedAndReported) {
  EndpointConfig e;
  e.base_url = "http://127.0.0.1:1/v1";  // nothing listens on port 1
  e.model_name = "m";
  e.retry = {2, 1};
  e.timeout_s = 2;
  ChatClient client(e);
  const QueryResult r = client.query(build_request("q", RgbImage(2, 2), e));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.attempts, 2);
  EXPECT_NE(r.error.find("transport"), std::string::npos);
}

TEST(ChatClient, ServerSeesLosslessImage) {
  const RgbImage img = scmix::testing::scene(3, 33, 17);
  MockChatServer server([&](const json& req, int) {
    return MockReply{200, scmix::testing::request_image(req) == img ? "same" : "different"};
  });
  ChatClient client(endpoint_for(server));
  EXPECT_EQ(client.query(build_request("q", img, client.endpoint())).text, "same");
}

}  // namespace
}  // namespace scmix::eval
