// Copyright 2026 The DocSplit Authors.
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

#include "docsplit/adapter.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace docsplit {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

AdapterResult run_process(const std::string& command, const std::string& input, double timeout) {
  AdapterResult result;
  ignore_sigpipe();

  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    result.error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    result.error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    result.error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }

  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]})
      ::close(fd);
    result.error = std::string("fork: ") + std::strerror(errno);
    return result;
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::signal(SIGPIPE, SIG_DFL);
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  int to_child = in_pipe[1];
  int from_child = out_pipe[0];
  int err_child = err_pipe[0];
  for (int fd : {to_child, from_child, err_child}) ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);

  const auto start = Clock::now();
  std::size_t written = 0;
  std::string err_text;
  if (input.empty()) close_fd(to_child);

  char buf[65536];
  while (from_child >= 0 || err_child >= 0) {
    const double left = timeout - elapsed(start);
    if (left <= 0) {
      result.timed_out = true;
      break;
    }
    pollfd fds[3];
    int count = 0;
    if (to_child >= 0) fds[count++] = {to_child, POLLOUT, 0};
    if (from_child >= 0) fds[count++] = {from_child, POLLIN, 0};
    if (err_child >= 0) fds[count++] = {err_child, POLLIN, 0};
    const int rc = ::poll(fds, static_cast<nfds_t>(count), static_cast<int>(left * 1000) + 1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      result.error = std::string("poll: ") + std::strerror(errno);
      break;
    }
    for (int i = 0; i < count; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == to_child) {
        const auto n = ::write(to_child, input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) close_fd(to_child);  // child stopped reading
        else if (written == input.size()) close_fd(to_child);
      } else {
        const int fd = fds[i].fd;
        const auto n = ::read(fd, buf, sizeof buf);
        if (n > 0) {
          (fd == from_child ? result.output : err_text).append(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EAGAIN) {
          if (fd == from_child) close_fd(from_child);
          else close_fd(err_child);
        }
      }
    }
  }
  close_fd(to_child);
  close_fd(from_child);
  close_fd(err_child);

  int status = 0;
  if (result.timed_out) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    result.error = fmt::format("timed out after {:.1f}s", timeout);
    return result;
  }
  // Output is closed; give the child the remaining budget to exit.
  for (;;) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) break;
    if (elapsed(start) > timeout) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      result.timed_out = true;
      result.error = fmt::format("timed out after {:.1f}s", timeout);
      return result;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  if (!result.error.empty()) return result;
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  if (result.exit_code != 0) {
    auto tail = err_text.size() > 400 ? err_text.substr(err_text.size() - 400) : err_text;
    while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.pop_back();
    result.error = fmt::format("adapter exited with status {}{}{}", result.exit_code,
                               tail.empty() ? "" : ": ", tail);
    return result;
  }
  result.ok = true;
  return result;
}

AdapterResult run_http(const std::string& url, const std::string& body, double timeout) {
  AdapterResult result;
  // http://host[:port][/path]
  const auto rest = url.substr(7);
  const auto slash = rest.find('/');
  const auto host_port = rest.substr(0, slash);
  const auto path = slash == std::string::npos ? std::string("/") : rest.substr(slash);

  httplib::Client client("http://" + host_port);
  const auto secs = static_cast<time_t>(timeout);
  const auto usecs = static_cast<time_t>((timeout - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  auto res = client.Post(path, body, "application/json");
  if (!res) {
    result.error = "http: " + httplib::to_string(res.error());
    result.timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                       res.error() == httplib::Error::Read;
    return result;
  }
  result.exit_code = res->status;
  if (res->status < 200 || res->status >= 300) {
    result.error = fmt::format("http status {}", res->status);
    return result;
  }
  result.output = res->body;
  result.ok = true;
  return result;
}

}  // namespace

AdapterRequest make_request(const GroundTruthPacket& packet, PromptPack prompt) {
  AdapterRequest request;
  request.packet_id = packet.packet_id;
  request.page_count = packet.n();
  for (const auto& page : packet.pages) {
    PageRecord bare;
    bare.packet_position = page.packet_position;
    bare.text_path = page.text_path;
    bare.image_path = page.image_path;
    request.pages.push_back(std::move(bare));
  }
  request.prompt = std::move(prompt);
  return request;
}

std::string format_request(const AdapterRequest& request, const ModelRunConfig& config) {
  nlohmann::ordered_json j;
  j["packet_id"] = request.packet_id;
  j["page_count"] = request.page_count;
  j["pages"] = nlohmann::ordered_json::array();
  for (const auto& page : request.pages) {
    nlohmann::ordered_json p;
    p["page"] = page.packet_position;
    p["text_path"] = page.text_path ? nlohmann::ordered_json(*page.text_path) : nullptr;
    p["image_path"] = page.image_path ? nlohmann::ordered_json(*page.image_path) : nullptr;
    j["pages"].push_back(std::move(p));
  }
  j["system"] = request.prompt.system_text;
  j["prompt"] = request.prompt.task_text;
  j["generation"] = {{"temperature", config.temperature},
                     {"top_p", config.top_p},
                     {"top_k", config.top_k},
                     {"max_tokens", config.max_tokens}};
  return j.dump();
}

AdapterResult run_adapter(const AdapterRequest& request, const ModelRunConfig& config) {
  const auto start = Clock::now();
  AdapterResult result;
  if (config.adapter.empty()) {
    result.error = "no adapter configured";
  } else {
    const auto body = format_request(request, config);
    try {
      result = config.adapter.rfind("http://", 0) == 0
                   ? run_http(config.adapter, body, config.timeout_seconds)
                   : run_process(config.adapter, body, config.timeout_seconds);
    } catch (const std::exception& e) {
      result = AdapterResult{};
      result.error = e.what();
    }
  }
  if (result.ok && result.output.find_first_not_of(" \t\r\n") == std::string::npos) {
    result.ok = false;
    result.error = "adapter returned empty output";
  }
  result.packet_id = request.packet_id;
  result.seconds = elapsed(start);
  return result;
}

std::vector<AdapterResult> run_batch(const std::vector<AdapterRequest>& requests,
                                     const ModelRunConfig& config) {
  std::vector<AdapterResult> results(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++)
      results[i] = run_adapter(requests[i], config);
  };
  const auto jobs = static_cast<std::size_t>(std::max(1, config.jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, requests.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace docsplit
