#pragma once

#include <stdexcept>
#include <string>

namespace symsq {

// Contract violations, malformed documents and unsupported inputs.
// The command line tool maps every Error to exit status 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

}  // namespace symsq
