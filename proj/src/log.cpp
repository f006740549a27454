#include "dqr/log.hpp"

#include <cstdio>

namespace dqr {

void Logger::event(const std::string& name, const Fields& fields) {
  if (!sink_) return;
  *sink_ << "evt=" << name;
  for (const auto& [k, v] : fields) *sink_ << ' ' << k << '=' << v;
  *sink_ << '\n';
}

std::string Logger::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string Logger::num(long v) { return std::to_string(v); }

}  // namespace dqr
