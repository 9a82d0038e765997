#pragma once

#include <stdexcept>
#include <string>

namespace flw {

enum class ErrorKind {
  precondition,      // input violates an operation's precondition
  budget_exhausted,  // bounded search hit its limits before deciding
  audit_failed,      // a bounded audit (index, ambiguity, code) rejected the input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::precondition, what);
}

}  // namespace flw
