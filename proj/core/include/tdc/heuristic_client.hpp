#pragma once

#include "tdc/encode.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>

namespace tdc {

inline constexpr std::string_view kHeuristicProtocol = "tdc-heur/1";

/// Source of child probabilities for d-OR ordering.
class HeuristicClient {
 public:
  virtual ~HeuristicClient() = default;

  /// Probabilities for every active node of `g`, or nothing on failure.
  virtual std::optional<HeuristicRanking> query(const GraphEncoding& g) = 0;
};

/// Newline-delimited JSON messages (keys sorted) for the sidecar protocol.
std::string heuristic_hello();
std::string heuristic_request(const GraphEncoding& g, std::uint64_t id);
/// Checks id, key set and range; empty on any protocol violation.
std::optional<HeuristicRanking> parse_heuristic_response(std::string_view line, std::uint64_t id,
                                                         const GraphEncoding& g);

/// Runs `command` through /bin/sh and talks tdc-heur/1 over its standard
/// streams. One request is in flight at a time. After the first failure
/// (handshake, timeout, malformed reply, dead process) the client stays
/// degraded and every query returns nothing.
class SidecarClient : public HeuristicClient {
 public:
  explicit SidecarClient(std::string command,
                         std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));
  ~SidecarClient() override;

  SidecarClient(const SidecarClient&) = delete;
  SidecarClient& operator=(const SidecarClient&) = delete;

  std::optional<HeuristicRanking> query(const GraphEncoding& g) override;

  bool degraded() const { return degraded_; }
  const std::string& model_id() const { return model_id_; }
  const std::string& last_error() const { return last_error_; }

 private:
  bool start();
  bool send_line(const std::string& line);
  std::optional<std::string> read_line();
  void fail(std::string why);
  void stop();

  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
  bool degraded_ = false;
  std::string model_id_;
  std::string last_error_;
};

}  // namespace tdc
