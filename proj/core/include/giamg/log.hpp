#ifndef GIAMG_LOG_HPP
#define GIAMG_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace giamg {

// Verbosity from the GIAMG_LOG environment variable (0 = silent).
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("GIAMG_LOG");
    return env ? std::atoi(env) : 0;
  }();
  return level;
}

inline void log_msg(int level, const std::string& msg) {
  if (log_level() >= level) std::fprintf(stderr, "[giamg] %s\n", msg.c_str());
}

}  // namespace giamg

#endif
