#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jumpgue {

// Failure categories surfaced by the numerical modules. The C API maps each
// one onto a stable integer code (see jumpgue.h).
enum class ErrorTag {
  invalid_argument,
  loss_of_positivity,
  degenerate_jump,
  pole_or_sign_change,
  route_disagreement,
  non_convergence,
  insufficient_conditioning,
  blow_up,
  io,
};

std::string_view to_string(ErrorTag tag) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorTag tag, const std::string& what) : std::runtime_error(what), tag_(tag) {}

  ErrorTag tag() const noexcept { return tag_; }

 private:
  ErrorTag tag_;
};

[[noreturn]] inline void fail(ErrorTag tag, const std::string& what) { throw Error(tag, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorTag::invalid_argument, what);
}

}  // namespace jumpgue
