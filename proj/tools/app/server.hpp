#pragma once

#include "service.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace httplib {
class Server;
}

namespace semdisc::app {

struct SessionState
{
   std::string dataset_id;
   std::vector<std::string> concepts;
   std::vector<ColorId> palette;
   std::optional<std::uint64_t> last_seed;
};

/// Independent sessions behind one lock.
class SessionStore
{
 public:
   std::string create(const std::string& dataset_id);
   std::optional<SessionState> get(const std::string& id) const;
   /// Throws Error(not_found) for unknown ids.
   SessionState update(const std::string& id, const json& patch);
   bool erase(const std::string& id);

 private:
   mutable std::mutex mutex_;
   std::map<std::string, SessionState> sessions_;
   std::uint64_t next_ = 1;
};

json to_json(const SessionState& s);

/// Response of one routed request; used by the server and by tests that
/// skip the socket.
struct ApiResponse
{
   int status = 200;
   json body;
};

/// Maps a thrown error onto the status table: 400 validation/degenerate,
/// 404 not_found, 422 infeasible, 500 otherwise.
ApiResponse error_response(const std::exception& e);

class ApiServer
{
 public:
   explicit ApiServer(const Service& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
   ~ApiServer();

   ApiServer(const ApiServer&) = delete;
   ApiServer& operator=(const ApiServer&) = delete;

   /// Dispatch without HTTP; `body` is the raw request text.
   ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

   /// Binds and serves until stop(). Port 0 picks a free port; see port().
   bool bind(const std::string& host, int port);
   void listen_after_bind();
   void stop();
   int port() const noexcept { return port_; }

 private:
   const Service& service_;
   SessionStore sessions_;
   std::unique_ptr<httplib::Server> http_;
   int port_ = 0;
};

/// OpenAPI 3 description of the /v1 routes.
json openapi_document();

} // namespace semdisc::app
