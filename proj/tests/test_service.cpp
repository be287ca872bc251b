#include "dynpeak/csv.hpp"
#include "dynpeak/service.hpp"

#include "fixtures.hpp"

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>
#include <vector>

using namespace dynpeak;
using nlohmann::json;

namespace {

std::string csv_of(const TimeSeries& s) {
  std::ostringstream out;
  io::write_series(out, s);
  return out.str();
}

json detect_body(const std::string& csv, double lambda_r = 0.2) {
  return {{"csv", csv}, {"params", {{"relative_threshold", lambda_r}}}};
}

} // namespace

TEST_SUITE("service") {

TEST_CASE("health") {
  service::Handlers h;
  const auto r = h.health();
  CHECK(r.status == 200);
  CHECK(json::parse(r.body)["status"] == "ok");
}

TEST_CASE("detect is stateless and deterministic") {
  service::Handlers h;
  const std::string body = json{{"csv", csv_of(fixtures::scenario_series("A"))}}.dump();
  const auto a = h.detect(body);
  const auto b = h.detect(body);
  REQUIRE(a.status == 200);
  CHECK(a.body == b.body);
  CHECK(json::parse(a.body)["pulses"]["indexes"].size() == 10);
}

TEST_CASE("lowering lambda_r recovers the missed pulse") {
  service::Handlers h;
  const std::string csv = csv_of(fixtures::missed_pulse_series());
  const auto before = json::parse(h.detect(detect_body(csv, 0.2).dump()).body);
  const auto after = json::parse(h.detect(detect_body(csv, 0.1).dump()).body);
  CHECK(after["pulses"]["indexes"].size() == before["pulses"]["indexes"].size() + 1);
  CHECK(before["outliers"]["upper"].size() == 1);
  CHECK(after["outliers"]["upper"].empty());
}

TEST_CASE("malformed requests get 400-class errors") {
  service::Handlers h;
  auto code = [](const service::Response& r) { return json::parse(r.body)["error"]["code"]; };

  const auto missing = h.detect("{}");
  CHECK(missing.status == 400);
  CHECK(code(missing) == "missing_series");

  CHECK(h.detect("not json").status == 400);
  CHECK(code(h.detect("[1,2]")) == "invalid_json");

  const auto bad_csv = h.detect(json{{"csv", "time_min,lh_ng_ml\n0,1\n10,1\n30,1\n"}}.dump());
  CHECK(bad_csv.status == 400);
  CHECK(code(bad_csv) == "invalid_series");
  CHECK(json::parse(bad_csv.body)["error"]["line"] == 4);

  const auto bad_param = h.detect(detect_body(csv_of(fixtures::scenario_series("A")), 1.5).dump());
  CHECK(bad_param.status == 400);
  CHECK(code(bad_param) == "invalid_request");

  const auto unknown = h.detect(json{{"token", "0000000000000000"}}.dump());
  CHECK(unknown.status == 404);
  CHECK(code(unknown) == "unknown_token");
}

TEST_CASE("uploads are addressed by token") {
  service::Handlers h;
  const std::string csv = csv_of(fixtures::scenario_series("B"));
  const auto up = h.upload(csv);
  REQUIRE(up.status == 200);
  const auto j = json::parse(up.body);
  CHECK(j["samples"] == 100);
  const auto by_token = h.detect(json{{"token", j["token"]}}.dump());
  CHECK(by_token.body == h.detect(json{{"csv", csv}}.dump()).body);

  const auto bad = h.upload("time_min,lh_ng_ml\n0,1\n10,-1\n");
  CHECK(bad.status == 400);
  CHECK(json::parse(bad.body)["error"]["line"] == 3);
}

TEST_CASE("upload cache evicts the oldest entry") {
  service::UploadCache cache(2);
  TimeSeries s;
  const auto t1 = cache.put("a", s);
  const auto t2 = cache.put("b", s);
  CHECK(cache.put("a", s) == t1);
  CHECK(cache.size() == 2);
  cache.put("c", s);
  CHECK(cache.size() == 2);
  CHECK_FALSE(cache.get(t1));
  CHECK(cache.get(t2));
}

TEST_CASE("port resolution") {
  ::unsetenv("DYNPEAK_PORT");
  CHECK(service::resolve_port(8080) == 8080);
  ::setenv("DYNPEAK_PORT", "9123", 1);
  CHECK(service::resolve_port(8080) == 9123);
  ::setenv("DYNPEAK_PORT", "http", 1);
  CHECK_THROWS(service::resolve_port(8080));
  ::unsetenv("DYNPEAK_PORT");
}

TEST_CASE("detect on 2000 samples stays within the latency budget") {
  auto sc = lh::scenario("D");
  sc.generator.duration = 2000.0;
  sc.sampling.period = 1.0;
  sc.sampling.start_shift = 1.0;
  sc.sampling.time_jitter = 0.15;
  sc.sampling.count = 2000;
  const std::string body =
      json{{"csv", csv_of(lh::sample_series(lh::integrate_plasma(sc.generator), sc.sampling))}}.dump();
  service::Handlers h;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = h.detect(body);
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(r.status == 200);
  MESSAGE("detect latency for 2000 samples: " << ms << " ms");
  CHECK(ms < 200.0);
}

TEST_CASE("HTTP round trip with concurrent clients") {
  service::Handlers handlers;
  httplib::Server server;
  service::mount_routes(server, handlers);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  const std::string csv = csv_of(fixtures::scenario_series("C"));
  const auto up = client.Post("/series", csv, "text/csv");
  REQUIRE(up);
  CHECK(up->status == 200);
  const std::string token = json::parse(up->body)["token"];

  std::vector<std::future<std::string>> replies;
  for (int i = 0; i < 8; ++i)
    replies.push_back(std::async(std::launch::async, [&, i] {
      httplib::Client c("127.0.0.1", port);
      const json body = i % 2 ? json{{"token", token}} : json{{"csv", csv}};
      const auto r = c.Post("/detect", body.dump(), "application/json");
      return r && r->status == 200 ? r->body : std::string();
    }));
  const std::string first = replies[0].get();
  CHECK_FALSE(first.empty());
  for (std::size_t i = 1; i < replies.size(); ++i)
    CHECK(replies[i].get() == first);

  const auto bad = client.Post("/detect", "{}", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  server.stop();
  loop.join();
}

}
