#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "plr/error.hpp"
#include "plr/oracle.hpp"
#include "plr/syntax.hpp"

namespace plr {
namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct sigaction current {};
    if (sigaction(SIGPIPE, nullptr, &current) == 0 && current.sa_handler == SIG_DFL) {
      struct sigaction ignore {};
      ignore.sa_handler = SIG_IGN;
      sigemptyset(&ignore.sa_mask);
      sigaction(SIGPIPE, &ignore, nullptr);
    }
  });
}

class ChildProcess {
 public:
  ChildProcess(const std::vector<std::string>& argv, std::chrono::milliseconds timeout) : timeout_(timeout) {
    if (argv.empty()) throw OracleFailure("external oracle: empty command");
    ignore_sigpipe_once();

    int in_pipe[2];
    int out_pipe[2];
    int err_pipe[2];
    if (pipe2(in_pipe, O_CLOEXEC) != 0 || pipe2(out_pipe, O_CLOEXEC) != 0 || pipe2(err_pipe, O_CLOEXEC) != 0) {
      throw OracleFailure(std::string("external oracle: pipe: ") + std::strerror(errno));
    }
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_ = fork();
    if (pid_ < 0) throw OracleFailure(std::string("external oracle: fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      execvp(args[0], args.data());
      const int err = errno;
      [[maybe_unused]] auto n = write(err_pipe[1], &err, sizeof err);
      _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];

    // the error pipe closes on a successful exec and carries errno otherwise
    int exec_errno = 0;
    const ssize_t n = read(err_pipe[0], &exec_errno, sizeof exec_errno);
    close(err_pipe[0]);
    if (n == sizeof exec_errno) {
      waitpid(pid_, nullptr, 0);
      pid_ = -1;
      close(to_child_);
      close(from_child_);
      throw OracleFailure("external oracle: cannot execute '" + argv[0] + "': " + std::strerror(exec_errno));
    }
  }

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  ~ChildProcess() {
    if (pid_ <= 0) return;
    if (!broken_) {
      static constexpr char quit[] = "QUIT\n";
      [[maybe_unused]] auto n = write(to_child_, quit, sizeof quit - 1);
    }
    close(to_child_);
    close(from_child_);
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) == pid_) return;
      usleep(10'000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }

  /// Sends one request line and returns the response line.
  std::string roundtrip(const std::string& line) {
    if (broken_) throw OracleFailure("external oracle: connection is broken");
    std::string msg = line + "\n";
    std::size_t off = 0;
    while (off < msg.size()) {
      const ssize_t n = write(to_child_, msg.data() + off, msg.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        broken_ = true;
        throw OracleFailure(std::string("external oracle: write failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
    return read_line();
  }

 private:
  std::string read_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        broken_ = true;
        throw OracleFailure("external oracle: response timeout");
      }
      pollfd pfd{from_child_, POLLIN, 0};
      const int ready = poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        broken_ = true;
        throw OracleFailure(std::string("external oracle: poll failed: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = read(from_child_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        broken_ = true;
        throw OracleFailure("external oracle: process closed its output");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::chrono::milliseconds timeout_;
  bool broken_ = false;
};

struct Channel {
  std::mutex mutex;
  ChildProcess process;

  Channel(const std::vector<std::string>& argv, std::chrono::milliseconds timeout) : process(argv, timeout) {}

  std::string roundtrip(const std::string& line) {
    std::lock_guard lock(mutex);
    return process.roundtrip(line);
  }
};

class ExternalBackend final : public OracleBackend {
 public:
  ExternalBackend(std::shared_ptr<Channel> channel, Signature declared)
      : channel_(std::move(channel)), declared_(std::move(declared)) {}

  bool entails(const OracleQuery& q) const override {
    const std::string response = channel_->roundtrip(to_wire(q));
    if (response == "1") return true;
    if (response == "0") return false;
    if (response.starts_with("E")) throw OracleFailure("external oracle rejected query: " + trim_error(response));
    throw OracleFailure("external oracle: unexpected response '" + response + "'");
  }

  Signature signature() const override { return declared_; }

  std::shared_ptr<const OracleBackend> with_axioms(std::span<const HornAxiom> axioms) const override {
    Signature extended = declared_;
    OracleOntology loaded;
    for (const auto& ax : axioms) {
      const std::string response = channel_->roundtrip("AX " + to_line(ax));
      if (response != "1") {
        throw OracleFailure("external oracle rejected axiom '" + to_line(ax) + "': " + trim_error(response));
      }
      loaded.add(ax);
    }
    extended.merge(loaded.signature());
    return std::make_shared<ExternalBackend>(channel_, std::move(extended));
  }

  std::string_view name() const override { return "external"; }

 private:
  static std::string trim_error(const std::string& response) {
    if (response.starts_with("E ")) return response.substr(2);
    return response;
  }

  std::shared_ptr<Channel> channel_;
  Signature declared_;
};

}  // namespace

Oracle external_oracle(ExternalOracleOptions options) {
  auto channel = std::make_shared<Channel>(options.command, options.timeout);
  return Oracle(std::make_shared<ExternalBackend>(std::move(channel), std::move(options.declared_signature)));
}

std::vector<std::string> split_command(std::string_view command_line) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  bool quoted = false;
  for (char c : command_line) {
    if (c == '"') {
      quoted = !quoted;
      in_word = true;
    } else if (!quoted && (c == ' ' || c == '\t' || c == '\n')) {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (in_word) words.push_back(std::move(cur));
  return words;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < line.size() && (line[lead] == ' ' || line[lead] == '\t')) ++lead;
    line.remove_prefix(lead);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto space = line.find_first_of(" \t");
    const std::string_view kind = line.substr(0, space);
    std::string_view name = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
    while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.remove_prefix(1);
    if (!is_valid_name(name)) {
      throw ParseError(line_no, lead + (space == std::string_view::npos ? line.size() : space) + 2,
                       "expected a name", std::string(name));
    }
    const Symbol s = Symbol::intern(name);
    if (kind == "concept") {
      sig.concepts.insert(s);
    } else if (kind == "role") {
      sig.roles.insert(s);
    } else if (kind == "property") {
      sig.properties.insert(s);
    } else {
      throw ParseError(line_no, lead + 1, "expected 'concept', 'role' or 'property'", std::string(kind));
    }
    if (end == text.size()) break;
  }
  return sig;
}

}  // namespace plr
