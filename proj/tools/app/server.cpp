#include "server.hpp"

#include "manifest.hpp"
#include "semdisc/error.hpp"

#include <httplib.h>

namespace semdisc::app {

std::string SessionStore::create(const std::string& dataset_id)
{
   std::lock_guard lock(mutex_);
   const std::string id = "s" + std::to_string(next_++);
   sessions_[id] = SessionState{dataset_id, {}, {}, std::nullopt};
   return id;
}

std::optional<SessionState> SessionStore::get(const std::string& id) const
{
   std::lock_guard lock(mutex_);
   const auto it = sessions_.find(id);
   if(it == sessions_.end()) return std::nullopt;
   return it->second;
}

SessionState SessionStore::update(const std::string& id, const json& patch)
{
   if(!patch.is_object()) fail(ErrorKind::validation, "session update must be a JSON object");
   // Parse fully before taking the lock so a bad patch changes nothing.
   std::optional<std::vector<std::string>> concepts;
   std::optional<std::vector<ColorId>> palette;
   std::optional<std::optional<std::uint64_t>> seed;
   try {
      for(const auto& [key, value] : patch.items()) {
         if(key == "concepts") concepts = value.get<std::vector<std::string>>();
         else if(key == "palette") {
            std::vector<ColorId> ids;
            for(const auto& v : value) {
               if(!v.is_number_integer()) fail(ErrorKind::validation, "palette must be integer color ids");
               ids.push_back(ColorId{v.get<int>()});
            }
            palette = std::move(ids);
         } else if(key == "last_seed") {
            seed = value.is_null() ? std::optional<std::uint64_t>{} : value.get<std::uint64_t>();
         } else {
            fail(ErrorKind::validation, "session: unknown field '" + key + "'");
         }
      }
   } catch(const nlohmann::json::exception& e) {
      fail(ErrorKind::validation, std::string("session: ") + e.what());
   }
   std::lock_guard lock(mutex_);
   const auto it = sessions_.find(id);
   if(it == sessions_.end()) fail(ErrorKind::not_found, "unknown session '" + id + "'");
   if(concepts) it->second.concepts = *concepts;
   if(palette) it->second.palette = *palette;
   if(seed) it->second.last_seed = *seed;
   return it->second;
}

bool SessionStore::erase(const std::string& id)
{
   std::lock_guard lock(mutex_);
   return sessions_.erase(id) > 0;
}

json to_json(const SessionState& s)
{
   json palette = json::array();
   for(auto id : s.palette) palette.push_back(id.value);
   return {{"dataset", s.dataset_id},
           {"concepts", s.concepts},
           {"palette", std::move(palette)},
           {"last_seed", s.last_seed ? json(*s.last_seed) : json(nullptr)}};
}

ApiResponse error_response(const std::exception& e)
{
   if(const auto* err = dynamic_cast<const Error*>(&e)) {
      int status = 500;
      switch(err->kind()) {
      case ErrorKind::validation:
      case ErrorKind::degenerate: status = 400; break;
      case ErrorKind::not_found: status = 404; break;
      case ErrorKind::infeasible: status = 422; break;
      case ErrorKind::io: status = 500; break;
      }
      return {status, error_body(to_string(err->kind()), err->what())};
   }
   if(const auto* perr = dynamic_cast<const nlohmann::json::parse_error*>(&e))
      return {400, error_body("malformed_json", perr->what())};
   if(const auto* jerr = dynamic_cast<const nlohmann::json::exception*>(&e))
      return {400, error_body("validation", jerr->what())};
   return {500, error_body("internal", e.what())};
}

ApiServer::ApiServer(const Service& service, std::optional<std::filesystem::path> ui_dir)
    : service_(service)
    , http_(std::make_unique<httplib::Server>())
{
   auto route = [this](const httplib::Request& req, httplib::Response& res) {
      const auto r = handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
   };
   http_->Get(R"(/v1/.*)", route);
   http_->Post(R"(/v1/.*)", route);
   http_->Put(R"(/v1/.*)", route);
   http_->Delete(R"(/v1/.*)", route);
   if(ui_dir && std::filesystem::is_directory(*ui_dir)) http_->set_mount_point("/", ui_dir->string());
}

ApiServer::~ApiServer() = default;

ApiResponse ApiServer::handle(std::string_view method, std::string_view path, std::string_view body)
{
   try {
      auto parse_body = [&] { return body.empty() ? json::object() : json::parse(body); };
      if(method == "GET") {
         if(path == "/v1/colors") return {200, service_.colors()};
         if(path == "/v1/concepts") return {200, service_.concepts()};
         if(path == "/v1/openapi.json") return {200, openapi_document()};
         if(path == "/v1/version") return {200, {{"tool", "semdisc"}, {"version", kToolVersion}}};
      }
      if(method == "POST") {
         if(path == "/v1/semantic-distance") return {200, service_.semantic_distance(parse_body())};
         if(path == "/v1/assign") return {200, service_.assign(parse_body())};
         if(path == "/v1/discriminability") return {200, service_.discriminability(parse_body())};
         if(path == "/v1/predict") return {200, service_.predict(parse_body())};
         if(path == "/v1/palette/swap") return {200, service_.palette_swap(parse_body())};
         if(path == "/v1/optimize") {
            auto out = service_.optimize(parse_body());
            if(out["count"].get<std::size_t>() == 0) {
               out["error"] = error_body("infeasible", "no palette satisfies the constraints")["error"];
               return {422, std::move(out)};
            }
            return {200, std::move(out)};
         }
         if(path == "/v1/sessions") {
            const auto id = sessions_.create(service_.dataset().id);
            auto state = sessions_.get(id);
            auto out = to_json(*state);
            out["session_id"] = id;
            return {201, std::move(out)};
         }
      }
      constexpr std::string_view prefix = "/v1/sessions/";
      if(path.starts_with(prefix)) {
         const std::string id(path.substr(prefix.size()));
         if(method == "GET") {
            const auto s = sessions_.get(id);
            if(!s) return {404, error_body("not_found", "unknown session '" + id + "'")};
            auto out = to_json(*s);
            out["session_id"] = id;
            return {200, std::move(out)};
         }
         if(method == "PUT") {
            auto out = to_json(sessions_.update(id, parse_body()));
            out["session_id"] = id;
            return {200, std::move(out)};
         }
         if(method == "DELETE") {
            if(!sessions_.erase(id)) return {404, error_body("not_found", "unknown session '" + id + "'")};
            return {200, {{"deleted", id}}};
         }
      }
      return {404, error_body("unknown_route", std::string(method) + " " + std::string(path))};
   } catch(const std::exception& e) {
      return error_response(e);
   }
}

bool ApiServer::bind(const std::string& host, int port)
{
   if(port == 0) {
      port_ = http_->bind_to_any_port(host);
      return port_ > 0;
   }
   port_ = port;
   return http_->bind_to_port(host, port);
}

void ApiServer::listen_after_bind()
{
   http_->listen_after_bind();
}

void ApiServer::stop()
{
   http_->stop();
}

json openapi_document()
{
   auto op = [](std::string summary, bool has_body) {
      json o = {{"summary", std::move(summary)},
                {"responses",
                 {{"200", {{"description", "ok"}}},
                  {"400", {{"description", "validation error"}}},
                  {"404", {{"description", "unknown concept, color, model or session"}}},
                  {"422", {{"description", "infeasible constraints"}}},
                  {"500", {{"description", "internal error"}}}}}};
      if(has_body)
         o["requestBody"] = {{"required", true},
                             {"content", {{"application/json", {{"schema", {{"type", "object"}}}}}}}};
      return o;
   };
   json paths;
   paths["/v1/colors"]["get"] = op("Dataset colors with LAB, xyY, LCh and sRGB hex", false);
   paths["/v1/concepts"]["get"] = op("Concept names, blacklist, bundled experiments and model presets", false);
   paths["/v1/semantic-distance"]["post"] =
       op("Pairwise delta S and delta E. Body: {concepts: [a, b], colors: [ids], noise_scale?} or {experiment}", true);
   paths["/v1/assign"]["post"] = op("Optimal concept to color assignment. Body: {concepts, colors, merit?}", true);
   paths["/v1/discriminability"]["post"] =
       op("Monte-Carlo assignment distribution and entropy index. Body: {concepts, colors, samples?, seed?}", true);
   paths["/v1/predict"]["post"] =
       op("Predicted accuracy and RT per stimulus. Body: {experiment | concepts + colors, models?, include_ties?}",
          true);
   paths["/v1/optimize"]["post"] = op("Ranked feasible palettes. Body: {concepts, constraints?, limit?}", true);
   paths["/v1/palette/swap"]["post"] = op("Rescore a palette after one swap. Body: {concepts, colors, remove, add}", true);
   paths["/v1/sessions"]["post"] = op("Create a session", false);
   paths["/v1/sessions/{id}"]["get"] = op("Read a session", false);
   paths["/v1/sessions/{id}"]["put"] = op("Update concepts, palette or last_seed of a session", true);
   paths["/v1/sessions/{id}"]["delete"] = op("Delete a session", false);
   return {{"openapi", "3.0.3"},
           {"info", {{"title", "semdisc API"}, {"version", kToolVersion}}},
           {"paths", std::move(paths)}};
}

} // namespace semdisc::app
