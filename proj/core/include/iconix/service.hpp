#pragma once

#include <memory>
#include <string>

#include "iconix/session.hpp"

namespace iconix {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

int http_status_for(ErrorCode code);

// The session HTTP API. `dispatch` is the whole routing table and can be
// driven without sockets; start/listen put it behind an HTTP server.
class SessionService {
 public:
  explicit SessionService(SessionManager& sessions);
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  HttpResponse dispatch(const std::string& method, const std::string& path, const std::string& body);

  // Binds (port 0 = any free port) and serves on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  SessionManager& sessions_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace iconix
