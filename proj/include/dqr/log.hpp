#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dqr {

// Line-delimited structured log: one event per line as space-separated
// key=value pairs. A null sink drops everything. Events are only emitted from
// coordinator code (never from worker threads), so output order is
// deterministic.
class Logger {
 public:
  Logger() = default;
  explicit Logger(std::ostream* sink) : sink_(sink) {}

  using Fields = std::vector<std::pair<std::string, std::string>>;
  void event(const std::string& name, const Fields& fields = {});

  static std::string num(double v);
  static std::string num(long v);

 private:
  std::ostream* sink_ = nullptr;
};

}  // namespace dqr
