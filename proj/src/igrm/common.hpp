#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace igrm {

// Element type used by every numeric kernel. Tests and reference oracles
// assume double; flip to float only for throughput experiments.
using real = double;

enum class ErrorCode {
  invalid_argument,
  io,
  parse,
  numeric,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
inline void format_into(std::ostringstream&) {}
template <typename T, typename... Rest>
void format_into(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  format_into(os, rest...);
}
}  // namespace detail

template <typename... Args>
std::string format(const Args&... args) {
  std::ostringstream os;
  detail::format_into(os, args...);
  return os.str();
}

template <typename... Args>
[[noreturn]] void fail(ErrorCode code, const Args&... args) {
  throw Error(code, format(args...));
}

template <typename... Args>
void require(bool cond, const Args&... args) {
  if (!cond) fail(ErrorCode::invalid_argument, args...);
}

}  // namespace igrm
