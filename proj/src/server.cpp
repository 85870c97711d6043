#include "likemind/server.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>

#include <httplib.h>

namespace likemind {

namespace {

Response error(int status, const std::string& message) { return {status, Json{{"error", message}}}; }

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) parts.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

Json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
  Json j = Json::parse(body.begin(), body.end());
  if (!j.is_object()) throw ArgumentError("request body must be a JSON object");
  return j;
}

Timestamp system_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void ServerConfig::set_bind(std::string_view bind) {
  const auto colon = bind.rfind(':');
  std::string_view port_text = bind;
  if (colon != std::string_view::npos) {
    if (colon > 0) host = std::string(bind.substr(0, colon));
    port_text = bind.substr(colon + 1);
  }
  int p = 0;
  for (char c : port_text) {
    if (c < '0' || c > '9') throw ArgumentError("invalid bind address " + std::string(bind));
    p = p * 10 + (c - '0');
    if (p > 65535) throw ArgumentError("invalid port in " + std::string(bind));
  }
  if (port_text.empty()) throw ArgumentError("invalid bind address " + std::string(bind));
  port = p;
}

Service::Service(const Dataset& dataset, CategoryAliases aliases, ServerConfig config)
    : dataset_(&dataset),
      engine_(dataset, std::move(aliases)),
      config_(std::move(config)),
      id_rng_(config_.deterministic ? std::mt19937_64(config_.seed) : std::mt19937_64(std::random_device{}())),
      logical_clock_(0) {
  if (config_.deterministic) {
    config_.defaults.budget = Budget::proposals(config_.deterministic_swaps);
    engine_.set_clock([this] { return now(); });
  }
  config_.defaults.validate();
}

Timestamp Service::now() {
  if (!config_.deterministic) return system_now();
  std::lock_guard lock(store_mutex_);
  return ++logical_clock_;
}

std::string Service::new_id() {
  std::uint64_t hi, lo;
  if (config_.deterministic) {
    hi = id_rng_();
    lo = id_rng_();
  } else {
    std::random_device rd;
    hi = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ id_rng_();
    lo = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ id_rng_();
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

std::size_t Service::session_count() const {
  std::lock_guard lock(store_mutex_);
  return sessions_.size();
}

std::size_t Service::evict_expired() {
  const auto cutoff = std::chrono::steady_clock::now() - config_.session_ttl;
  std::lock_guard lock(store_mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry(it->second->mutex, std::try_to_lock);
    if (entry.owns_lock() && it->second->last_access < cutoff) {
      entry.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::shared_ptr<Service::Entry> Service::find(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  evict_expired();
  const auto parts = split_path(path);
  try {
    if (parts.size() < 2 || parts[0] != "v1") return error(404, "no such endpoint");
    const std::string& resource = parts[1];
    if (resource == "mindsets" && parts.size() == 2) {
      if (method != "GET") return error(405, "method not allowed");
      return {200, mindset_catalog()};
    }
    if (resource == "pois" && parts.size() == 3) {
      if (method != "GET") return error(405, "method not allowed");
      return get_poi(parts[2]);
    }
    if (resource == "sessions") {
      if (parts.size() == 2) {
        if (method != "POST") return error(405, "method not allowed");
        return create_session(parse_body(body));
      }
      if (parts.size() == 3) {
        if (method != "GET") return error(405, "method not allowed");
        return get_session(parts[2]);
      }
      if (parts.size() == 4 && parts[3] == "recommend") {
        if (method != "POST") return error(405, "method not allowed");
        return recommend(parts[2], parse_body(body));
      }
      if (parts.size() == 4 && parts[3] == "bookmarks") {
        if (method != "POST") return error(405, "method not allowed");
        return bookmark(parts[2], parse_body(body));
      }
    }
    return error(404, "no such endpoint");
  } catch (const Json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const ArgumentError& e) {
    return error(400, e.what());
  } catch (const NotFoundError& e) {
    return error(404, e.what());
  } catch (const ConflictError& e) {
    return error(409, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

Response Service::create_session(const Json& body) {
  auto lat = body.find("lat");
  auto lon = body.find("lon");
  if (lat == body.end() || lon == body.end() || !lat->is_number() || !lon->is_number())
    throw ArgumentError("\"lat\" and \"lon\" are required numbers");
  const GeoPoint loc{lat->get<double>(), lon->get<double>()};
  if (!loc.valid()) throw ArgumentError("coordinates out of range");
  Timestamp wall_time;
  if (auto t = body.find("wall_time"); t != body.end() && !t->is_null()) {
    if (!t->is_string()) throw ArgumentError("\"wall_time\" must be an ISO-8601 string");
    auto parsed = parse_timestamp(t->get<std::string>());
    if (!parsed) throw ArgumentError("unparseable \"wall_time\"");
    wall_time = *parsed + static_cast<Timestamp>(dataset_->utc_offset_minutes()) * 60;
  } else {
    wall_time = now() + static_cast<Timestamp>(dataset_->utc_offset_minutes()) * 60;
  }
  auto entry = std::make_shared<Entry>();
  std::string id;
  {
    std::lock_guard lock(store_mutex_);
    do id = new_id();
    while (sessions_.count(id));
    entry->session = engine_.open_session(id, Context::at(loc, wall_time));
    entry->last_access = std::chrono::steady_clock::now();
    sessions_.emplace(id, entry);
  }
  std::lock_guard lock(entry->mutex);
  return {201, session_summary(entry->session, *dataset_)};
}

Response Service::get_session(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->last_access = std::chrono::steady_clock::now();
  return {200, session_summary(entry->session, *dataset_)};
}

Response Service::recommend(const std::string& id, const Json& body) {
  auto entry = find(id);
  Mindset mindset;
  auto m = body.find("mindset");
  if (m == body.end()) throw ArgumentError("\"mindset\" is required");
  if (m->is_string()) {
    auto found = find_builtin_mindset(m->get<std::string>());
    if (!found) {
      Json labels = Json::array();
      for (const auto& b : builtin_mindsets()) labels.push_back(b.label);
      return {400, Json{{"error", "unknown mindset \"" + m->get<std::string>() + "\""}, {"labels", labels}}};
    }
    mindset = *found;
  } else {
    mindset = mindset_from_json(*m);
  }
  EngineParams params = config_.defaults;
  if (auto o = body.find("overrides"); o != body.end()) params = apply_overrides(params, *o);

  std::lock_guard lock(entry->mutex);
  entry->last_access = std::chrono::steady_clock::now();
  const Recommendation rec = engine_.iterate(entry->session, mindset, params);
  return {200, to_json(rec, entry->session, *dataset_, !config_.deterministic)};
}

Response Service::bookmark(const std::string& id, const Json& body) {
  auto entry = find(id);
  auto poi = body.find("poi");
  if (poi == body.end() || !poi->is_string()) throw ArgumentError("\"poi\" (a POI id) is required");
  std::lock_guard lock(entry->mutex);
  entry->last_access = std::chrono::steady_clock::now();
  const bool added = engine_.bookmark(entry->session, poi->get<std::string>());
  Json j = session_summary(entry->session, *dataset_);
  j["added"] = added;
  return {200, j};
}

Response Service::get_poi(const std::string& id) {
  auto p = dataset_->find_poi(id);
  if (!p) throw NotFoundError("unknown POI " + id);
  return {200, to_json(dataset_->poi(*p), *dataset_)};
}

void run_http_server(Service& service, const std::string& record_path) {
  httplib::Server http;
  std::mutex record_mutex;
  std::ofstream record;
  if (!record_path.empty()) {
    record.open(record_path, std::ios::app);
    if (!record) throw Error("cannot open request log " + record_path);
  }
  const auto& origins = service.config().cors_origins;
  auto allow_origin = [&](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_header("Origin")) return;
    const std::string origin = req.get_header_value("Origin");
    const bool any = std::find(origins.begin(), origins.end(), "*") != origins.end();
    if (any || std::find(origins.begin(), origins.end(), origin) != origins.end()) {
      res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
      res.set_header("Vary", "Origin");
    }
  };
  auto dispatch = [&](const httplib::Request& req, httplib::Response& res) {
    if (record.is_open()) {
      std::lock_guard lock(record_mutex);
      record << Json{{"method", req.method}, {"path", req.path}, {"body", req.body}}.dump() << '\n' << std::flush;
    }
    const Response r = service.handle(req.method, req.path, req.body);
    allow_origin(req, res);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  http.Get(".*", dispatch);
  http.Post(".*", dispatch);
  http.Options(".*", [&](const httplib::Request& req, httplib::Response& res) {
    allow_origin(req, res);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  const auto& cfg = service.config();
  if (!http.listen(cfg.host, cfg.port))
    throw Error("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
}

std::vector<std::string> replay(Service& service, std::istream& log) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(log, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json req = Json::parse(line);
    const Response r =
        service.handle(req.at("method").get<std::string>(), req.at("path").get<std::string>(),
                       req.value("body", std::string()));
    out.push_back(Json{{"status", r.status}, {"body", r.body}}.dump());
  }
  return out;
}

}  // namespace likemind
