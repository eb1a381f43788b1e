#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ffzeta {

// All library failures throw Error. The code is a stable machine-readable
// token ("DivisionByZero", "BudgetExceeded", ...); the CLI maps it to a JSON
// error object and exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ffzeta
