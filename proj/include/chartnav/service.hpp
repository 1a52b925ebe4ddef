#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "chartnav/session.hpp"
#include "json.hpp"

namespace chartnav {

inline constexpr int kProtocolVersion = 1;

// One protocol session: every request line yields exactly one response line
// carrying a per-session sequence number starting at 1.
//
// Requests are JSON objects with an "op" of init, navigate, command, get_tree,
// get_settings, set_preset or create_preset. Responses carry "version", "seq"
// and "ok", plus "announcement", "tree", "settings" or "error" as relevant.
class SessionService {
 public:
  SessionService(std::shared_ptr<const HierarchyTree> tree, SettingsState settings = {});

  std::string handle(std::string_view request_line);
  nlohmann::ordered_json handle_json(const nlohmann::ordered_json& request);

  const Session& session() const { return session_; }

 private:
  nlohmann::ordered_json dispatch(const nlohmann::ordered_json& request,
                                  nlohmann::ordered_json& response);
  nlohmann::ordered_json tree_json() const;
  nlohmann::ordered_json presets_json() const;

  Session session_;
  std::uint64_t seq_ = 0;
};

nlohmann::ordered_json to_json(const Announcement& announcement);

// Newline-delimited JSON over TCP on the loopback interface. Each accepted
// connection gets its own SessionService; requests on a connection are
// handled in arrival order.
class TcpServer {
 public:
  using ServiceFactory = std::function<std::unique_ptr<SessionService>()>;

  // Binds and listens immediately; port 0 picks a free port. Throws
  // Error(kIo) when the port is taken.
  TcpServer(ServiceFactory factory, std::uint16_t port);
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }

  // Accept loop; returns after stop().
  void run();
  void stop();

 private:
  void serve_client(int fd);

  ServiceFactory factory_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::set<int> client_fds_;
  std::vector<std::thread> workers_;
};

}  // namespace chartnav
