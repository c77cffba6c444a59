#include "iconix/service.hpp"

#include <thread>
#include <vector>

#include "httplib.h"
#include "iconix/error.hpp"

namespace iconix {

using nlohmann::json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::StageOrderViolation:
      return 409;
    case ErrorCode::EmptyPool:
    case ErrorCode::InsufficientFrames:
      return 422;
    case ErrorCode::BackendUnavailable:
    case ErrorCode::BackendTimeout:
    case ErrorCode::MalformedResponse:
      return 502;
    case ErrorCode::CorruptStore:
    case ErrorCode::Io:
      return 500;
    default:
      return 400;
  }
}

namespace {

HttpResponse json_response(const json& j, int status = 200) { return {status, "application/json", j.dump()}; }

HttpResponse error_response(ErrorCode code, const std::string& message, const json& stage) {
  return json_response({{"error", {{"code", to_string(code)}, {"stage", stage}, {"message", message}}}},
                       http_status_for(code));
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

}  // namespace

struct SessionService::Impl {
  httplib::Server server;
  std::thread thread;
};

SessionService::SessionService(SessionManager& sessions) : sessions_(sessions), impl_(std::make_unique<Impl>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = dispatch(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
}

SessionService::~SessionService() { stop(); }

HttpResponse SessionService::dispatch(const std::string& method, const std::string& path, const std::string& body) {
  const auto parts = split_path(path);
  json stage = nullptr;
  try {
    if (parts.size() < 2 || parts[0] != "v1" || parts[1] != "sessions") {
      throw Error(ErrorCode::NotFound, "no route for " + path);
    }
    json payload = json::object();
    if (method == "POST" && body.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        payload = json::parse(body);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("request body is not JSON: ") + e.what());
      }
    }
    if (parts.size() == 2) {
      if (method != "POST") throw Error(ErrorCode::NotFound, "use POST to create a session");
      return json_response(session_json(sessions_.create(payload)), 201);
    }
    const std::string& id = parts[2];
    if (parts.size() == 3) {
      if (method != "GET") throw Error(ErrorCode::NotFound, "use GET to read a session");
      return json_response(session_json(sessions_.get(id)));
    }
    const std::string& action = parts[3];
    if (method == "GET" && parts.size() == 5 && action == "artifacts") {
      bool is_json = false;
      const Bytes bytes = sessions_.artifact(id, parts[4], &is_json);
      return {200, is_json ? "application/json" : "image/png", std::string(bytes.begin(), bytes.end())};
    }
    if (method == "GET" && parts.size() == 5 && action == "scatter") {
      return json_response(sessions_.scatter(id, parts[4]));
    }
    if (method == "POST" && parts.size() == 4) {
      if (action == "restyle") return json_response(session_json(sessions_.restyle(id, payload)));
      if (stage_for_request(action)) return json_response(session_json(sessions_.advance(id, action, payload)));
    }
    throw Error(ErrorCode::NotFound, "no route for " + method + " " + path);
  } catch (const StageError& e) {
    return error_response(e.code(), e.what(), to_string(e.stage()));
  } catch (const Error& e) {
    return error_response(e.code(), e.what(), stage);
  }
}

int SessionService::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void SessionService::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
}

void SessionService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace iconix
