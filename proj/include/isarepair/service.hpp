#pragma once

// Session registry and request handling for the HTTP service. The logic is
// transport-independent (SessionService::handle); HttpServer binds it to
// cpp-httplib.
//
// Routes (JSON bodies; every session response carries "revision"):
//   GET  /health
//   POST /sessions                          {ontology, missing} texts or {ontology_file, missing_file}
//   POST /sessions/load                     {snapshot} or {file}
//   POST /sessions/{id}/save                {file?}
//   GET  /sessions/{id}/entries
//   GET  /sessions/{id}/entries/{i}
//   POST /sessions/{id}/entries/{i}/generate {revision, variant}
//   POST /sessions/{id}/validate            {revision, axiom, verdict}
//   GET  /sessions/{id}/source-target?sub=A&super=B
//   POST /sessions/{id}/entries/{i}/repair  {revision, axiom, source, target}
//   POST /sessions/{id}/entries/{i}/revoke  {revision}
//   GET  /sessions/{id}/status
//   GET  /sessions/{id}/hierarchy
//   GET  /sessions/{id}/ontology            text, or JSON when Accept asks for it

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>

#include <json.hpp>

#include "isarepair/error.hpp"
#include "isarepair/session.hpp"

namespace httplib {
class Server;
}

namespace isarepair {

struct ServiceConfig {
  std::filesystem::path data_dir = ".";  // fixture files and snapshots are resolved here
  AbductionLimits limits;
};

struct ServiceRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string accept;
};

struct ServiceResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class SessionService {
 public:
  explicit SessionService(ServiceConfig config = {});

  ServiceResponse handle(const ServiceRequest& req);

  // HTTP status for an error code.
  static int http_status(ErrorCode code);

 private:
  struct Slot {
    std::shared_mutex mutex;
    RepairSession session;
    std::string created_at;
    explicit Slot(RepairSession s, std::string at) : session(std::move(s)), created_at(std::move(at)) {}
  };

  std::shared_ptr<Slot> find(const std::string& id);
  std::string add(RepairSession s);
  nlohmann::json route(const ServiceRequest& req, const nlohmann::json& body, ServiceResponse& resp);

  ServiceConfig config_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 1;
};

// Runs the service on a background thread.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free one) and starts serving; returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on the calling thread.
  bool listen(const std::string& host, int port);
  void stop();

 private:
  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace isarepair
