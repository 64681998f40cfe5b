#include "tdc/heuristic_client.hpp"

#include <nlohmann/json.hpp>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <iostream>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace tdc {

using Json = nlohmann::json;  // std::map-backed: keys serialise sorted

std::string heuristic_hello() {
  return Json{{"hello", "tdc-heur"}, {"version", kHeuristicProtocol}}.dump();
}

std::string heuristic_request(const GraphEncoding& g, std::uint64_t id) {
  Json edges = Json::array();
  for (auto [s, t] : g.edges) edges.push_back({s, t});
  return Json{{"id", id},
              {"nodes", g.node_features},
              {"edges", std::move(edges)},
              {"edge_features", g.edge_features},
              {"active", g.active}}
      .dump();
}

std::optional<HeuristicRanking> parse_heuristic_response(std::string_view line, std::uint64_t id,
                                                         const GraphEncoding& g) {
  const Json doc = Json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  auto jid = doc.find("id");
  if (jid == doc.end() || !jid->is_number_unsigned() || jid->get<std::uint64_t>() != id) return std::nullopt;
  auto probs = doc.find("probs");
  if (probs == doc.end() || !probs->is_object() || probs->size() != g.active.size()) return std::nullopt;

  HeuristicRanking ranking;
  for (std::size_t node : g.active) {
    auto p = probs->find(std::to_string(node));
    if (p == probs->end() || !p->is_number()) return std::nullopt;
    const double v = p->get<double>();
    if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
    ranking.probabilities[node] = v;
  }
  return ranking;
}

SidecarClient::SidecarClient(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  std::signal(SIGPIPE, SIG_IGN);
  if (!start()) return;
  if (!send_line(heuristic_hello())) return;
  auto reply = read_line();
  if (!reply) return;
  const Json doc = Json::parse(*reply, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.value("ok", false)) {
    fail("handshake rejected: " + *reply);
    return;
  }
  model_id_ = doc.value("model_id", std::string{});
}

SidecarClient::~SidecarClient() { stop(); }

bool SidecarClient::start() {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) {
    fail(std::string("pipe: ") + std::strerror(errno));
    return false;
  }
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    fail(std::string("pipe: ") + std::strerror(errno));
    return false;
  }
  pid_ = fork();
  if (pid_ < 0) {
    fail(std::string("fork: ") + std::strerror(errno));
    return false;
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  return true;
}

bool SidecarClient::send_line(const std::string& line) {
  std::string payload = line + "\n";
  std::size_t done = 0;
  while (done < payload.size()) {
    const ssize_t n = write(to_child_, payload.data() + done, payload.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(std::string("write to heuristic: ") + std::strerror(errno));
      return false;
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::string> SidecarClient::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      fail("heuristic timed out");
      return std::nullopt;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int r = poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      fail(r == 0 ? "heuristic timed out" : std::string("poll: ") + std::strerror(errno));
      return std::nullopt;
    }
    char chunk[65536];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      fail("heuristic closed its output");
      return std::nullopt;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::optional<HeuristicRanking> SidecarClient::query(const GraphEncoding& g) {
  if (degraded_) return std::nullopt;
  const std::uint64_t id = next_id_++;
  if (!send_line(heuristic_request(g, id))) return std::nullopt;
  auto reply = read_line();
  if (!reply) return std::nullopt;
  auto ranking = parse_heuristic_response(*reply, id, g);
  if (!ranking) fail("malformed heuristic response: " + reply->substr(0, 200));
  return ranking;
}

void SidecarClient::fail(std::string why) {
  if (!degraded_) {
    std::cerr << "warning: heuristic disabled, falling back to creation order (" << why << ")\n";
  }
  degraded_ = true;
  last_error_ = std::move(why);
}

void SidecarClient::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    // Give the sidecar a moment to exit on EOF, then make sure it is gone.
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      usleep(2000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

}  // namespace tdc
