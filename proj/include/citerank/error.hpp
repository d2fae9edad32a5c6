#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace citerank {

// Which module raised a fatal error. Each maps to its own process exit code.
enum class Module { ingest, cocitation, metrics, ranking, eval, synth, cli };

std::string_view module_name(Module module);

// Exit code used by the command-line tool when an error from `module`
// terminates a run. Codes are distinct and nonzero.
int exit_code(Module module);

class Error : public std::runtime_error {
 public:
  Error(Module module, const std::string& message);

  Module module() const { return module_; }
  int exit_code() const { return citerank::exit_code(module_); }

 private:
  Module module_;
};

// Raised when building co-citation neighborhoods would exceed the configured
// memory cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, std::size_t required_bytes,
                 std::size_t budget_bytes);

  std::size_t required_bytes() const { return required_bytes_; }
  std::size_t budget_bytes() const { return budget_bytes_; }

 private:
  std::size_t required_bytes_;
  std::size_t budget_bytes_;
};

}  // namespace citerank
