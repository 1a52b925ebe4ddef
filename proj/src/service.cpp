#include "chartnav/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "chartnav/error.hpp"

namespace chartnav {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad_request(const std::string& what) { throw Error(ErrorCode::kBadRequest, what); }

std::string require_string(const ojson& request, const char* key) {
  if (!request.contains(key) || !request[key].is_string()) {
    bad_request(std::string("'") + key + "' must be a string");
  }
  return request[key].get<std::string>();
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

ojson to_json(const Announcement& announcement) {
  return {{"text", announcement.text}, {"source", std::string(to_string(announcement.source))}};
}

SessionService::SessionService(std::shared_ptr<const HierarchyTree> tree, SettingsState settings)
    : session_(std::move(tree), std::move(settings)) {}

std::string SessionService::handle(std::string_view request_line) {
  ojson request;
  try {
    request = ojson::parse(request_line);
  } catch (const ojson::parse_error&) {
    request = nullptr;
  }
  return handle_json(request).dump() + "\n";
}

ojson SessionService::handle_json(const ojson& request) {
  ojson response = ojson::object();
  response["version"] = kProtocolVersion;
  response["seq"] = ++seq_;
  if (request.is_object() && request.contains("id")) response["id"] = request["id"];
  try {
    if (!request.is_object()) bad_request("request must be a JSON object");
    if (request.contains("version") &&
        (!request["version"].is_number_integer() || request["version"].get<long long>() != kProtocolVersion)) {
      throw Error(ErrorCode::kVersionMismatch, "protocol version " + request["version"].dump() +
                                                   " is not supported");
    }
    response["ok"] = true;
    dispatch(request, response);
  } catch (const Error& e) {
    response["ok"] = false;
    response["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (e.code() == ErrorCode::kInapplicableToken) {
      response["announcement"] = to_json(Announcement{e.what(), AnnouncementSource::kSpeak});
    }
  }
  return response;
}

ojson SessionService::dispatch(const ojson& request, ojson& response) {
  const std::string op = require_string(request, "op");
  if (op == "init") {
    session_.reset();
    response["announcement"] = to_json(session_.current());
    response["cursor"] = session_.cursor().id;
    ojson levels = ojson::array();
    for (Level l : kPresetLevels) levels.push_back(std::string(level_title(l)));
    response["levels"] = levels;
    response["presets"] = presets_json();
  } else if (op == "navigate") {
    const auto key = parse_nav_key(require_string(request, "key"));
    if (!key) bad_request("unknown navigation key");
    response["announcement"] = to_json(session_.navigate(*key));
    response["cursor"] = session_.cursor().id;
  } else if (op == "command") {
    const auto command = parse_command(require_string(request, "command"));
    if (!command) bad_request("unknown command");
    if (auto a = session_.apply(*command)) response["announcement"] = to_json(*a);
    response["cursor"] = session_.cursor().id;
  } else if (op == "get_tree") {
    response["tree"] = tree_json();
    response["cursor"] = session_.cursor().id;
  } else if (op == "get_settings") {
    response["settings"] = ojson::parse(save_settings(session_.settings()));
    response["presets"] = presets_json();
  } else if (op == "set_preset") {
    const auto level = parse_level(require_string(request, "level"));
    if (!level || *level == Level::kRoot) bad_request("unknown preset level");
    session_.apply(ApplyPresetCommand{*level, require_string(request, "name")});
    response["settings"] = ojson::parse(save_settings(session_.settings()));
    response["presets"] = presets_json();
  } else if (op == "create_preset") {
    const auto level = parse_level(require_string(request, "level"));
    if (!level || *level == Level::kRoot) bad_request("unknown preset level");
    std::string name = require_string(request, "name");
    if (!request.contains("entries") || !request["entries"].is_array()) {
      bad_request("'entries' must be an array");
    }
    std::vector<TokenSetting> entries;
    for (const auto& e : request["entries"]) {
      if (!e.is_object()) bad_request("entries must be objects");
      const auto kind = parse_token_kind(require_string(e, "kind"));
      if (!kind) {
        throw Error(ErrorCode::kUnknownToken, "unknown token '" + e["kind"].get<std::string>() + "'");
      }
      const auto setting = parse_setting(require_string(e, "setting"));
      if (!setting) bad_request("setting must be off, short or long");
      entries.push_back({*kind, *setting});
    }
    session_.create_preset(std::move(name), *level, std::move(entries));
    response["settings"] = ojson::parse(save_settings(session_.settings()));
    response["presets"] = presets_json();
  } else {
    bad_request("unknown op '" + op + "'");
  }
  return response;
}

ojson SessionService::presets_json() const {
  ojson out = ojson::object();
  for (Level l : kPresetLevels) {
    const SettingsState& s = session_.settings();
    out[std::string(level_title(l))] = {{"level", std::string(to_string(l))},
                                        {"active", s.active_name(l)},
                                        {"description", describe_preset(s.active(l))},
                                        {"options", s.preset_names(l)}};
  }
  return out;
}

ojson SessionService::tree_json() const {
  const HierarchyTree& tree = session_.tree();
  ojson nodes = ojson::array();
  for (const auto& node : tree.nodes()) {
    ojson children = ojson::array();
    for (NodeIndex c : node.children) children.push_back(tree.node(c).id);
    nodes.push_back({{"id", node.id},
                     {"level", std::string(to_string(node.level))},
                     {"depth", node.depth},
                     {"label", announce(tree, node, session_.settings(), session_.focus()).text},
                     {"parent", node.parent ? ojson(tree.node(*node.parent).id) : ojson(nullptr)},
                     {"children", children}});
  }
  return {{"root", tree.root().id}, {"nodes", nodes}};
}

TcpServer::TcpServer(ServiceFactory factory, std::uint16_t port) : factory_(std::move(factory)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::kIo, std::string("socket: ") + std::strerror(errno));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    const std::string reason = std::strerror(errno);
    ::close(listen_fd_);
    throw Error(ErrorCode::kIo, "cannot listen on port " + std::to_string(port) + ": " + reason);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  stop();
  for (auto& t : workers_) {
    if (t.joinable()) t.join();
  }
}

void TcpServer::run() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR && !stopping_) continue;
      break;
    }
    std::lock_guard lock(mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    client_fds_.insert(fd);
    workers_.emplace_back([this, fd] { serve_client(fd); });
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  std::lock_guard lock(mutex_);
  for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::serve_client(int fd) {
  auto service = factory_();
  std::string buffer;
  char chunk[4096];
  bool open = true;
  while (open) {
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t newline;
    while ((newline = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!send_all(fd, service->handle(line))) {
        open = false;
        break;
      }
    }
  }
  {
    std::lock_guard lock(mutex_);
    client_fds_.erase(fd);
  }
  ::close(fd);
}

}  // namespace chartnav
