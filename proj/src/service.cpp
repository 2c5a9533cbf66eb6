#include "isarepair/service.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>

#include "isarepair/error.hpp"
#include "isarepair/json_io.hpp"
#include "isarepair/ontology_parser.hpp"

namespace isarepair {

using nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string now_iso() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", &tm);
  return buf;
}

const json& field(const json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) {
    throw Error(ErrorCode::BadRequest, std::string("missing field '") + name + "'");
  }
  return body[name];
}

std::string string_field(const json& body, const char* name) {
  const auto& v = field(body, name);
  if (!v.is_string()) throw Error(ErrorCode::BadRequest, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

// File names are resolved inside the data directory only.
std::filesystem::path in_data_dir(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::path rel(name);
  if (rel.is_absolute() || name.find("..") != std::string::npos) {
    throw Error(ErrorCode::BadRequest, "file names must be relative to the data directory");
  }
  return dir / rel;
}

void check_revision(const json& body, const RepairSession& s) {
  const auto& v = field(body, "revision");
  if (!v.is_number_unsigned() && !v.is_number_integer()) {
    throw Error(ErrorCode::BadRequest, "field 'revision' must be an integer");
  }
  if (v.get<std::uint64_t>() != s.revision()) {
    throw Error(ErrorCode::StaleRevision, "revision " + std::to_string(v.get<std::uint64_t>()) +
                                              " is stale; the session is at " + std::to_string(s.revision()));
  }
}

json entries_json(const RepairSession& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.entries().size(); ++i) out.push_back(entry_json(s, i));
  return out;
}

std::size_t parse_index(const std::string& s) {
  try {
    return std::stoul(s);
  } catch (...) {
    throw Error(ErrorCode::InvalidIndex, "bad entry index '" + s + "'");
  }
}

}  // namespace

SessionService::SessionService(ServiceConfig config) : config_(std::move(config)) {}

int SessionService::http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::StaleRevision:
    case ErrorCode::ConflictingVerdict: return 409;
    case ErrorCode::SyntaxError:
    case ErrorCode::UndeclaredRole:
    case ErrorCode::ReservedMarker:
    case ErrorCode::SelfSubsumption:
    case ErrorCode::MultipleDefinition:
    case ErrorCode::CyclicDefinition:
    case ErrorCode::BadRequest:
    case ErrorCode::IoError:
    case ErrorCode::InvalidIndex: return 400;
    case ErrorCode::ResourceLimit: return 413;
    default: return 422;
  }
}

std::shared_ptr<SessionService::Slot> SessionService::find(const std::string& id) {
  std::lock_guard lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

std::string SessionService::add(RepairSession s) {
  std::lock_guard lock(registry_mutex_);
  std::string id = "s" + std::to_string(next_id_++);
  sessions_.emplace(id, std::make_shared<Slot>(std::move(s), now_iso()));
  return id;
}

ServiceResponse SessionService::handle(const ServiceRequest& req) {
  ServiceResponse resp;
  try {
    json body = json::object();
    if (!req.body.empty()) {
      body = json::parse(req.body, nullptr, false);
      if (body.is_discarded()) throw Error(ErrorCode::BadRequest, "request body is not valid JSON");
    }
    json out = route(req, body, resp);
    if (resp.content_type == "application/json") resp.body = out.dump();
  } catch (const Error& e) {
    resp.status = http_status(e.code());
    resp.content_type = "application/json";
    resp.body = json{{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}}.dump();
  } catch (const std::exception& e) {
    resp.status = 500;
    resp.content_type = "application/json";
    resp.body = json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump();
  }
  return resp;
}

json SessionService::route(const ServiceRequest& req, const json& body, ServiceResponse& resp) {
  static const std::regex session_re(R"(^/sessions/([A-Za-z0-9]+)(/.*)?$)");
  static const std::regex entry_re(R"(^/entries/([0-9]+)(/[a-z-]+)?$)");
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";

  if (req.path == "/health" && get) return {{"ok", true}};

  if (req.path == "/sessions" && post) {
    std::string onto, missing;
    if (body.contains("ontology_file")) {
      onto = read_text(in_data_dir(config_.data_dir, string_field(body, "ontology_file")));
      missing = read_text(in_data_dir(config_.data_dir, string_field(body, "missing_file")));
    } else {
      onto = string_field(body, "ontology");
      missing = string_field(body, "missing");
    }
    auto s = RepairSession::create(load_terminology(onto), parse_missing(missing), config_.limits);
    json out = {{"session", ""}, {"revision", s.revision()}, {"entries", entries_json(s)}};
    out["session"] = add(std::move(s));
    out["created_at"] = find(out["session"].get<std::string>())->created_at;
    return out;
  }

  if (req.path == "/sessions/load" && post) {
    json snapshot;
    if (body.contains("file")) {
      snapshot = json::parse(read_text(in_data_dir(config_.data_dir, string_field(body, "file"))), nullptr, false);
      if (snapshot.is_discarded()) throw Error(ErrorCode::BadRequest, "snapshot file is not valid JSON");
    } else {
      snapshot = field(body, "snapshot");
    }
    auto s = load_snapshot(snapshot, config_.limits);
    json out = {{"revision", s.revision()}, {"entries", entries_json(s)}};
    out["session"] = add(std::move(s));
    return out;
  }

  std::smatch m;
  if (!std::regex_match(req.path, m, session_re)) throw Error(ErrorCode::BadRequest, "no route for " + req.path);
  auto slot = find(m[1].str());
  const std::string rest = m[2].str();
  auto& s = slot->session;

  if (get) {
    std::shared_lock lock(slot->mutex);
    if (rest == "/entries") return {{"revision", s.revision()}, {"entries", entries_json(s)}};
    if (rest == "/status") {
      json out = status_json(s);
      out["created_at"] = slot->created_at;
      return out;
    }
    if (rest == "/hierarchy") {
      json out = hierarchy_json(s.hierarchy());
      out["revision"] = s.revision();
      return out;
    }
    if (rest == "/source-target") {
      auto sub = req.query.find("sub");
      auto super = req.query.find("super");
      if (sub == req.query.end() || super == req.query.end()) {
        throw Error(ErrorCode::BadRequest, "query parameters 'sub' and 'super' are required");
      }
      IsaStatement ax{sub->second, super->second};
      json out = to_json(s.source_target(ax));
      out["axiom"] = to_json(ax);
      out["revision"] = s.revision();
      return out;
    }
    if (rest == "/ontology") {
      std::string text = serialize_ontology(s.current());
      if (req.accept.find("application/json") != std::string::npos) {
        return {{"revision", s.revision()}, {"ontology", text}};
      }
      resp.content_type = "text/plain; charset=utf-8";
      resp.body = text;
      return {};
    }
    std::smatch em;
    if (std::regex_match(rest, em, entry_re) && em[2].str().empty()) {
      json out = entry_json(s, parse_index(em[1].str()));
      out["revision"] = s.revision();
      return out;
    }
  }

  if (post) {
    std::unique_lock lock(slot->mutex);
    if (rest == "/save") {
      json snapshot = save_snapshot(s);
      json out = {{"revision", s.revision()}, {"snapshot", snapshot}};
      if (body.contains("file")) {
        auto path = in_data_dir(config_.data_dir, string_field(body, "file"));
        std::ofstream f(path);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        f << snapshot.dump(2) << "\n";
        out["file"] = string_field(body, "file");
      }
      return out;
    }
    if (rest == "/validate") {
      check_revision(body, s);
      s.validate(isa_from_json(field(body, "axiom")), parse_verdict(string_field(body, "verdict")));
      return {{"revision", s.revision()}, {"entries", entries_json(s)}};
    }
    std::smatch em;
    if (std::regex_match(rest, em, entry_re)) {
      std::size_t idx = parse_index(em[1].str());
      const std::string action = em[2].str();
      if (action == "/generate") {
        check_revision(body, s);
        Variant v = body.contains("variant") ? parse_variant(string_field(body, "variant")) : Variant::Basic;
        s.generate_actions(idx, v);
      } else if (action == "/repair") {
        check_revision(body, s);
        s.repair_axiom(idx, isa_from_json(field(body, "axiom")), string_field(body, "source"),
                       string_field(body, "target"));
      } else if (action == "/revoke") {
        check_revision(body, s);
        s.revoke(idx);
      } else {
        throw Error(ErrorCode::BadRequest, "no route for " + req.path);
      }
      json out = entry_json(s, idx);
      out["revision"] = s.revision();
      return out;
    }
  }
  throw Error(ErrorCode::BadRequest, "no route for " + req.method + " " + req.path);
}

HttpServer::HttpServer(SessionService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    ServiceRequest r{req.method, req.path, {}, req.body, req.get_header_value("Accept")};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    auto out = service_.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server_->Get(R"(/.*)", bridge);
  server_->Post(R"(/.*)", bridge);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace isarepair
