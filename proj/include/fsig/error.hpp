#pragma once

#include <stdexcept>
#include <string>

namespace fsig {

// Base for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input files, bad CLI parameters, schema violations.
struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// A requested computation refused because the group fails the standing
// hypotheses (p | |G| or pseudo-reflections present).
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }
[[noreturn]] inline void fail_input(const std::string& msg) { throw InputError(msg); }

}  // namespace fsig
