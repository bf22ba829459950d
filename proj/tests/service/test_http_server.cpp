#include <doctest.h>
#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "examsim/service/http_server.hpp"
#include "support/api_fixture.hpp"

using namespace examsim;
using namespace examsim::service;
using json = nlohmann::json;

TEST_CASE("the API over real HTTP") {
  testing::ApiFixture f;
  std::vector<std::string> log;
  std::mutex log_mutex;
  std::ofstream(f.dir / "index.html") << "<html>ui</html>";
  HttpServer server(f.api, f.dir.path(), [&](const std::string& line) {
    std::lock_guard lock(log_mutex);
    log.push_back(line);
  });
  int port = server.bind("127.0.0.1", 0);
  std::thread worker([&] { server.listen(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  httplib::Headers auth = {{"Authorization", std::string("Bearer ") + testing::kApiToken}};

  auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->body == "ok");

  auto page = client.Get("/index.html");
  REQUIRE(page);
  CHECK(page->body == "<html>ui</html>");

  auto denied = client.Post("/api/sessions", "{}", "application/json");
  REQUIRE(denied);
  CHECK(denied->status == 401);

  json body = {{"subject_area", "Operating Systems"}, {"topic", "processes"}};
  auto created = client.Post("/api/sessions", auth, body.dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Content-Type") == "application/json");
  auto id = json::parse(created->body)["id"].get<std::string>();

  auto answered = client.Post("/api/sessions/" + id + "/answer", auth,
                              json{{"text", "A running program."}}.dump(), "application/json");
  REQUIRE(answered);
  CHECK(answered->status == 200);
  CHECK(json::parse(answered->body)["counters"]["answered_total"] == 1);

  std::string big(1024 * 1024, 'x');
  for (std::size_t i = 0; i < big.size(); i += 80) big[i] = '\n';
  auto uploaded = client.Post("/api/documents?title=Big", auth, big, "text/markdown");
  REQUIRE(uploaded);
  CHECK(uploaded->status == 201);
  CHECK(json::parse(uploaded->body)["chunk_count"].get<int>() > 0);

  server.stop();
  worker.join();
  // Static files bypass the API and are not logged.
  CHECK(log.size() == 5);
}

TEST_CASE("binding an occupied port fails cleanly") {
  testing::ApiFixture f;
  HttpServer first(f.api);
  int port = first.bind("127.0.0.1", 0);
  HttpServer second(f.api);
  CHECK_THROWS_AS(second.bind("127.0.0.1", port), BindError);
}
