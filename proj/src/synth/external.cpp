// Copyright 2026 The sage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <netdb.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sageforge/response/response.hpp"
#include "sageforge/synth/synth.hpp"

namespace sageforge::synth {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw SynthError(SynthError::Kind::GeneratorFailure, msg);
}

void ignore_sigpipe() {
  // A dead peer must surface as EPIPE, not kill the process.
  static const int once = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return 0;
  }();
  (void)once;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void write_all(int fd, const std::string& data, const char* what) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(std::string(what) + " write failed: " + std::strerror(errno));
    }
    off += (size_t)n;
  }
}

/// Reads from fd into buffer until it holds a full line, then pops it
/// (without the newline).
std::string read_line(int fd, std::string& buffer, const char* what) {
  for (;;) {
    size_t nl = buffer.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    ssize_t n = ::read(fd, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(std::string(what) + " read failed: " + std::strerror(errno));
    }
    if (n == 0) fail(std::string(what) + " closed the stream mid-response");
    buffer.append(chunk, (size_t)n);
  }
}

std::string unwrap_text(const std::string& line, const char* what) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception&) {
    fail(std::string(what) + " sent malformed JSON");
  }
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
    fail(std::string(what) + " response missing the text field");
  return j["text"].get<std::string>();
}

std::string wrap_prompt(const std::string& prompt) {
  json j;
  j["prompt"] = prompt;
  return j.dump() + "\n";
}

/// Shared prompt construction and reply parsing; subclasses provide the
/// transport.
class ExternalGenerator : public Generator {
 public:
  std::vector<StrategyCandidate> propose(const ProblemInstance& p,
                                         int k) override {
    std::string reply =
        exchange("PROPOSE K=" + std::to_string(k) + " PROBLEM=" + p.id + "\n" +
                 p.question);
    std::vector<StrategyCandidate> out;
    std::istringstream lines(reply);
    std::string line;
    while ((int)out.size() < k && std::getline(lines, line)) {
      line = trim(line);
      if (line.empty()) continue;
      size_t colon = line.find(':');
      std::string name =
          trim(colon == std::string::npos ? line : line.substr(0, colon));
      std::string desc =
          colon == std::string::npos ? "" : trim(line.substr(colon + 1));
      if (name.empty()) continue;
      if (desc.empty()) desc = name;
      out.push_back({(int)out.size() + 1, name, desc, name});
    }
    if (out.empty()) fail("generator proposed no strategies");
    return out;
  }

  std::pair<std::string, std::string> realize(
      const ProblemInstance& p, const StrategyCandidate& s) override {
    std::string reply = exchange("REALIZE PROBLEM=" + p.id + " STRATEGY=" +
                                 s.name + "\n" + p.question);
    // Split the reply at the code fence; malformed replies stay intact so
    // verification can discard them on their merits.
    response::StructuredResponse parsed = response::parse_response(reply);
    auto code = parsed.spans.find("code");
    if (code == parsed.spans.end()) return {trim(reply), ""};
    size_t from = 0;
    if (auto think = parsed.spans.find("think"); think != parsed.spans.end())
      from = think->second.end;
    size_t open = reply.find("```", from);
    std::string reasoning =
        trim(reply.substr(0, open == std::string::npos ? reply.size() : open));
    return {reasoning, parsed.model_source};
  }

 protected:
  virtual std::string exchange(const std::string& prompt) = 0;
};

class SubprocessGenerator : public ExternalGenerator {
 public:
  explicit SubprocessGenerator(std::string command)
      : command_(std::move(command)) {}

  ~SubprocessGenerator() override {
    if (pid_ <= 0) return;
    ::close(to_child_);
    ::close(from_child_);
    ::kill(pid_, SIGTERM);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }

 protected:
  std::string exchange(const std::string& prompt) override {
    ignore_sigpipe();
    if (pid_ <= 0) spawn();
    write_all(to_child_, wrap_prompt(prompt), "generator process");
    return unwrap_text(read_line(from_child_, buffer_, "generator process"),
                       "generator process");
  }

 private:
  void spawn() {
    int to_pipe[2];
    int from_pipe[2];
    if (::pipe(to_pipe) != 0 || ::pipe(from_pipe) != 0)
      fail("cannot create generator pipes");
    pid_t pid = ::fork();
    if (pid < 0) fail("cannot fork generator process");
    if (pid == 0) {
      ::dup2(to_pipe[0], STDIN_FILENO);
      ::dup2(from_pipe[1], STDOUT_FILENO);
      ::close(to_pipe[0]);
      ::close(to_pipe[1]);
      ::close(from_pipe[0]);
      ::close(from_pipe[1]);
      ::execl("/bin/sh", "sh", "-c", command_.c_str(), (char*)nullptr);
      _exit(127);
    }
    ::close(to_pipe[0]);
    ::close(from_pipe[1]);
    pid_ = pid;
    to_child_ = to_pipe[1];
    from_child_ = from_pipe[0];
  }

  std::string command_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

class TcpGenerator : public ExternalGenerator {
 public:
  TcpGenerator(std::string host, int port)
      : host_(std::move(host)), port_(port) {}

 protected:
  std::string exchange(const std::string& prompt) override {
    ignore_sigpipe();
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string port = std::to_string(port_);
    if (::getaddrinfo(host_.c_str(), port.c_str(), &hints, &res) != 0)
      fail("cannot resolve generator host " + host_);

    int fd = -1;
    for (addrinfo* a = res; a; a = a->ai_next) {
      fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0)
      fail("cannot connect to generator at " + host_ + ":" + port);

    std::string line;
    try {
      write_all(fd, wrap_prompt(prompt), "generator endpoint");
      std::string buffer;
      line = read_line(fd, buffer, "generator endpoint");
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    return unwrap_text(line, "generator endpoint");
  }

 private:
  std::string host_;
  int port_;
};

}  // namespace

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::Reference:
      return std::make_unique<ReferenceGenerator>();
    case GeneratorSpec::Kind::Subprocess:
      return std::make_unique<SubprocessGenerator>(spec.command);
    case GeneratorSpec::Kind::Tcp:
      return std::make_unique<TcpGenerator>(spec.host, spec.port);
  }
  throw SynthError(SynthError::Kind::GeneratorFailure,
                   "unknown generator kind");
}

}  // namespace sageforge::synth
