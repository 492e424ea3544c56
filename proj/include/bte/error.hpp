#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bte {

enum class ErrorKind {
  domain,          // value or ring outside an operation's domain
  shape,           // length / ring / party mismatch between operands
  capability,      // parameter beyond a configured cap (fan-in, memory, width)
  reuse,           // correlated randomness consumed twice
  desync,          // round barrier misuse (one-sided send, scope mismatch)
  material,        // online phase without matching offline material
  io,              // dump file problems
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::shape: return "shape";
    case ErrorKind::capability: return "capability";
    case ErrorKind::reuse: return "reuse";
    case ErrorKind::desync: return "desync";
    case ErrorKind::material: return "material";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace bte
