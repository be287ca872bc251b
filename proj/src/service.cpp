#include "dynpeak/service.hpp"

#include "dynpeak/analysis.hpp"
#include "dynpeak/csv.hpp"
#include "dynpeak/error.hpp"
#include "dynpeak/result_document.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace dynpeak::service {

using nlohmann::json;

std::string UploadCache::put(const std::string& csv_text, TimeSeries series) {
  std::string token = io::sha256_hex(csv_text).substr(0, 16);
  std::unique_lock lock(mutex_);
  const bool known = std::any_of(entries_.begin(), entries_.end(),
                                 [&](const Entry& e) { return e.token == token; });
  if (!known) {
    entries_.push_back({token, csv_text, std::move(series)});
    while (entries_.size() > capacity_)
      entries_.pop_front();
  }
  return token;
}

std::optional<std::pair<std::string, TimeSeries>> UploadCache::get(const std::string& token) const {
  std::shared_lock lock(mutex_);
  for (const auto& e : entries_)
    if (e.token == token)
      return std::make_pair(e.csv, e.series);
  return std::nullopt;
}

std::size_t UploadCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

namespace {

Response error(int status, std::string_view code, const std::string& message, std::size_t line = 0) {
  json e = {{"code", code}, {"message", message}};
  if (line)
    e["line"] = line;
  return {status, json{{"error", e}}.dump() + "\n"};
}

} // namespace

Response Handlers::health() const {
  return {200, json{{"status", "ok"}, {"version", io::kToolVersion}}.dump() + "\n"};
}

Response Handlers::upload(std::string_view csv_body) {
  TimeSeries series;
  try {
    series = io::parse_series(csv_body);
  } catch (const InputError& e) {
    return error(400, "invalid_series", e.what(), e.line());
  }
  const std::size_t n = series.size();
  const std::string token = cache_.put(std::string(csv_body), std::move(series));
  return {200, json{{"token", token}, {"samples", n}}.dump() + "\n"};
}

Response Handlers::detect(std::string_view json_body) const {
  const json req = json::parse(json_body, nullptr, false);
  if (req.is_discarded() || !req.is_object())
    return error(400, "invalid_json", "request body must be a JSON object");

  std::string csv;
  TimeSeries series;
  try {
    if (req.contains("csv")) {
      if (!req["csv"].is_string())
        return error(400, "invalid_series", "'csv' must be a string");
      csv = req["csv"].get<std::string>();
      series = io::parse_series(csv);
    } else if (req.contains("token")) {
      if (!req["token"].is_string())
        return error(400, "invalid_token", "'token' must be a string");
      auto hit = cache_.get(req["token"].get<std::string>());
      if (!hit)
        return error(404, "unknown_token", "no uploaded series for this token");
      csv = std::move(hit->first);
      series = std::move(hit->second);
    } else {
      return error(400, "missing_series", "request needs a 'csv' or 'token' field");
    }
  } catch (const InputError& e) {
    return error(400, "invalid_series", e.what(), e.line());
  }

  try {
    DetectionParams params;
    if (req.contains("params"))
      params = io::params_from_json(req["params"]);
    const DetectionResult result = analyze(series, params);
    io::Provenance prov;
    prov.input_sha256 = io::sha256_hex(csv);
    return {200, io::write_result(io::make_document(series, result, prov))};
  } catch (const InputError& e) {
    return error(400, "invalid_request", e.what());
  }
}

int resolve_port(int cli_port) {
  if (const char* env = std::getenv("DYNPEAK_PORT"); env && *env) {
    char* end = nullptr;
    const long port = std::strtol(env, &end, 10);
    if (*end != '\0' || port < 0 || port > 65535)
      throw InputError("DYNPEAK_PORT must be a port number");
    return static_cast<int>(port);
  }
  return cli_port;
}

void mount_routes(httplib::Server& server, Handlers& handlers) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, handlers.health());
  });
  server.Post("/series", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, handlers.upload(req.body));
  });
  server.Post("/detect", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, handlers.detect(req.body));
  });
}

bool serve(int port) {
  Handlers handlers;
  httplib::Server server;
  mount_routes(server, handlers);
  return server.listen("127.0.0.1", port);
}

} // namespace dynpeak::service
