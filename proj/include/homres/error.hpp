#ifndef HOMRES_ERROR_HPP
#define HOMRES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace homres {

enum class ErrorKind {
  InvalidInput,
  NotFiniteDimensional,
  UnsupportedField,
  NotAGenerator,
  NeedsFiniteInjdim,
  HypothesesNotSatisfied,
  Unsupported,
  InternalError,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this type.  `location` is
/// filled by the workspace loader with a JSON-pointer style path.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string location = {})
      : std::runtime_error(what), kind_(kind), location_(std::move(location)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& location() const { return location_; }

 private:
  ErrorKind kind_;
  std::string location_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace homres

#endif  // HOMRES_ERROR_HPP
