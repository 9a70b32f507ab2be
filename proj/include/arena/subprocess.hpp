#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace arena {

// Child process with newline-delimited text I/O over stdin/stdout. The
// command line runs via /bin/sh -c. Reads support a deadline; a timeout
// leaves the stream intact so the caller can decide how to proceed.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command);
  ~ChildProcess();

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  bool running() const;

  // Writes line + '\n'. Returns false on a broken pipe.
  bool write_line(const std::string& line);

  enum class ReadStatus { Ok, Timeout, Eof };
  ReadStatus read_line(std::string& line, std::chrono::milliseconds timeout);

  void terminate();

 private:
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  int pid_ = -1;
  std::string buffer_;
};

}  // namespace arena
