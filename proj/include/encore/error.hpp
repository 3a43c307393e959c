#pragma once

#include <stdexcept>
#include <string>

namespace encore {

enum class errc {
  parse,              // malformed input file
  schema,             // well-formed but violates the data model
  empty_input,        // statistical op on zero samples/pairs
  degenerate_sample,  // zero-variance input where variance is required
  bad_argument,       // parameter outside its documented domain
  dimension_mismatch,
  non_finite,         // numerical blow-up (e.g. learning rate too large)
  io,
};

// Single exception type carrying a machine-checkable code. Library functions
// throw this and nothing else; callers map code() to exit status or messages.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace encore
