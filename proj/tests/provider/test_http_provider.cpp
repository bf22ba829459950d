#include <doctest.h>
#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "examsim/provider/http_provider.hpp"

using namespace examsim;
using namespace examsim::provider;
using json = nlohmann::json;

namespace {

ProviderRequest sample_request() {
  ProviderRequest r;
  r.instructions = "You are an examiner.";
  r.transcript = {{ChatRole::Assistant, "What is a process?"}, {ChatRole::User, "A program."}};
  r.directive_note = "Ask the next question.";
  r.temperature = 0.3;
  r.max_output_tokens = 256;
  return r;
}

std::string ok_body(const std::string& text) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}},
              {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 5}}}}
      .dump();
}

class FakeTransport : public HttpTransport {
 public:
  std::vector<HttpReply> replies;
  std::vector<std::optional<ErrorCode>> throws;
  int calls = 0;
  std::string last_url;
  std::string last_token;

  HttpReply post(const std::string& url, const std::string& token, const std::string&,
                 std::chrono::milliseconds) override {
    last_url = url;
    last_token = token;
    auto i = static_cast<std::size_t>(calls++);
    if (i < throws.size() && throws[i]) throw ProviderError(*throws[i], "fake");
    return replies.at(std::min(i, replies.size() - 1));
  }
};

struct Harness {
  FakeTransport* transport;
  std::vector<std::chrono::milliseconds> sleeps;
  std::unique_ptr<HttpChatProvider> provider;
};

std::unique_ptr<Harness> harness(std::vector<HttpReply> replies,
                                 std::vector<std::optional<ErrorCode>> throws = {}) {
  auto h = std::make_unique<Harness>();
  auto t = std::make_unique<FakeTransport>();
  t->replies = std::move(replies);
  t->throws = std::move(throws);
  h->transport = t.get();
  HttpProviderConfig config;
  config.base_url = "http://backend.test/v1";
  config.api_key = "secret";
  auto* sleeps = &h->sleeps;
  h->provider = std::make_unique<HttpChatProvider>(
      config, std::move(t), [sleeps](std::chrono::milliseconds d) { sleeps->push_back(d); });
  return h;
}

ErrorCode code_of(HttpChatProvider& p) {
  try {
    p.complete(sample_request());
  } catch (const ProviderError& e) {
    return e.code();
  }
  FAIL("expected a provider error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("chat body layout") {
  auto body = json::parse(build_chat_body(sample_request(), "m1"));
  CHECK(body["model"] == "m1");
  CHECK(body["temperature"].get<double>() == doctest::Approx(0.3));
  CHECK(body["max_tokens"] == 256);
  auto& m = body["messages"];
  REQUIRE(m.size() == 4);
  CHECK(m[0] == json{{"role", "system"}, {"content", "You are an examiner."}});
  CHECK(m[1]["role"] == "assistant");
  CHECK(m[2] == json{{"role", "user"}, {"content", "A program."}});
  CHECK(m[3] == json{{"role", "system"}, {"content", "Ask the next question."}});
}

TEST_CASE("reply parsing") {
  auto r = parse_chat_reply(ok_body("Hi"));
  CHECK(r.text == "Hi");
  REQUIRE(r.usage);
  CHECK(r.usage->prompt_tokens == 11);
  CHECK(r.usage->completion_tokens == 5);
  CHECK_THROWS_AS(parse_chat_reply("not json"), ProviderError);
  CHECK_THROWS_AS(parse_chat_reply(R"({"choices":[]})"), ProviderError);
  CHECK_THROWS_AS(parse_chat_reply(R"({"choices":[{"message":{"content":""}}]})"), ProviderError);
  CHECK_THROWS_AS(parse_chat_reply(R"({"choices":[{"message":{"content":3}}]})"), ProviderError);
}

TEST_CASE("status codes map to error variants") {
  CHECK(code_of(*harness({{401, ""}})->provider) == ErrorCode::ProviderAuthError);
  CHECK(code_of(*harness({{403, ""}})->provider) == ErrorCode::ProviderAuthError);
  CHECK(code_of(*harness({{500, ""}})->provider) == ErrorCode::ProviderUnavailable);
  CHECK(code_of(*harness({{503, ""}})->provider) == ErrorCode::ProviderUnavailable);
  CHECK(code_of(*harness({{404, ""}})->provider) == ErrorCode::ProviderProtocolError);
  CHECK(code_of(*harness({{200, "{}"}})->provider) == ErrorCode::ProviderProtocolError);
}

TEST_CASE("non-transient errors are not retried") {
  auto h = harness({{401, ""}});
  code_of(*h->provider);
  CHECK(h->transport->calls == 1);
  CHECK(h->sleeps.empty());
  CHECK(h->transport->last_url == "http://backend.test/v1/chat/completions");
  CHECK(h->transport->last_token == "secret");
}

TEST_CASE("rate limits and timeouts are retried twice with exponential backoff") {
  using std::chrono::milliseconds;
  SUBCASE("gives up after three attempts") {
    auto h = harness({{429, ""}});
    CHECK(code_of(*h->provider) == ErrorCode::ProviderRateLimited);
    CHECK(h->transport->calls == 3);
    CHECK(h->sleeps == std::vector<milliseconds>{milliseconds(500), milliseconds(1000)});
  }
  SUBCASE("recovers on the last attempt") {
    auto h = harness({{504, ""}, {429, ""}, {200, ok_body("back")}});
    CHECK(h->provider->complete(sample_request()).text == "back");
    CHECK(h->transport->calls == 3);
  }
  SUBCASE("transport timeouts count as transient") {
    auto h = harness({{200, ok_body("ok")}}, {ErrorCode::ProviderTimeout});
    CHECK(h->provider->complete(sample_request()).text == "ok");
    CHECK(h->sleeps.size() == 1);
  }
  SUBCASE("connection failures are not retried") {
    auto h = harness({{200, ok_body("ok")}}, {ErrorCode::ProviderUnavailable});
    CHECK(code_of(*h->provider) == ErrorCode::ProviderUnavailable);
    CHECK(h->transport->calls == 1);
  }
}

TEST_CASE("invalid requests are refused before any call") {
  auto h = harness({{200, ok_body("ok")}});
  auto r = sample_request();
  r.instructions.clear();
  CHECK_THROWS_AS(h->provider->complete(r), std::invalid_argument);
  CHECK(h->transport->calls == 0);
}

TEST_CASE("default transport against a local server") {
  httplib::Server server;
  std::string seen_auth;
  json seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_body = json::parse(req.body);
    if (seen_auth != "Bearer good") {
      res.status = 401;
      return;
    }
    res.set_content(ok_body("served"), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpProviderConfig config;
  config.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  config.api_key = "good";
  HttpChatProvider good(config);
  auto reply = good.complete(sample_request());
  CHECK(reply.text == "served");
  CHECK(seen_auth == "Bearer good");
  CHECK(seen_body["messages"].size() == 4);

  config.api_key = "bad";
  HttpChatProvider bad(config);
  CHECK(code_of(bad) == ErrorCode::ProviderAuthError);

  server.stop();
  worker.join();

  config.retry.max_retries = 0;
  HttpChatProvider gone(config);
  CHECK(code_of(gone) == ErrorCode::ProviderUnavailable);
}
