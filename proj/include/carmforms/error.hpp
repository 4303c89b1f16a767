#pragma once

#include <stdexcept>
#include <string>

namespace carmforms {

enum class errc {
  invalid_base,
  undefined_order,
  not_invertible,
  invalid_input,
  out_of_range,
  invalid_triple,
  resource_limit,
  internal_error,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

// Process exit contract: 0 success, 2 invalid input, 3 resource limit,
// 4 fixture failure (the latter is reported by selftest, not via errc).
inline int exit_code_for(errc code) noexcept {
  return code == errc::resource_limit ? 3 : 2;
}

}  // namespace carmforms
