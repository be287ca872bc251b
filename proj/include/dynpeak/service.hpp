#pragma once

// Local HTTP endpoint backing the interactive tuning UI.
//
//   GET  /health   -> {"status": "ok"}
//   POST /series   body: CSV            -> {"token": "...", "samples": N}
//   POST /detect   body: {"csv": "..."} or {"token": "..."},
//                  optional "params": {...}  -> result document

#include "dynpeak/time_series.hpp"

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>

namespace httplib {
class Server;
}

namespace dynpeak::service {

/// Bounded FIFO of uploaded series keyed by content hash.
class UploadCache {
public:
  explicit UploadCache(std::size_t capacity = 16) : capacity_(capacity) {}

  /// Stores the series and returns its token.
  std::string put(const std::string& csv_text, TimeSeries series);
  std::optional<std::pair<std::string, TimeSeries>> get(const std::string& token) const;
  std::size_t size() const;

private:
  struct Entry {
    std::string token;
    std::string csv;
    TimeSeries series;
  };
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::deque<Entry> entries_;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Request handlers, independent of the transport.
class Handlers {
public:
  explicit Handlers(std::size_t cache_capacity = 16) : cache_(cache_capacity) {}

  Response health() const;
  Response upload(std::string_view csv_body);
  Response detect(std::string_view json_body) const;

private:
  UploadCache cache_;
};

/// Registers the three routes on `server`; `handlers` must outlive it.
void mount_routes(httplib::Server& server, Handlers& handlers);

/// Resolves the listening port: DYNPEAK_PORT wins over `cli_port`.
int resolve_port(int cli_port);

/// Blocks serving on 127.0.0.1:port until the process is stopped.
/// Returns false when the port cannot be bound.
bool serve(int port);

} // namespace dynpeak::service
