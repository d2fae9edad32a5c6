#include "citerank/error.hpp"

namespace citerank {

std::string_view module_name(Module module) {
  switch (module) {
    case Module::ingest: return "ingest";
    case Module::cocitation: return "cocitation";
    case Module::metrics: return "metrics";
    case Module::ranking: return "ranking";
    case Module::eval: return "eval";
    case Module::synth: return "synth";
    case Module::cli: return "cli";
  }
  return "unknown";
}

int exit_code(Module module) {
  switch (module) {
    case Module::ingest: return 10;
    case Module::cocitation: return 11;
    case Module::metrics: return 12;
    case Module::ranking: return 13;
    case Module::eval: return 14;
    case Module::synth: return 15;
    case Module::cli: return 16;
  }
  return 1;
}

Error::Error(Module module, const std::string& message)
    : std::runtime_error(std::string(module_name(module)) + ": " + message),
      module_(module) {}

BudgetExceeded::BudgetExceeded(const std::string& message,
                               std::size_t required_bytes,
                               std::size_t budget_bytes)
    : Error(Module::cocitation, message),
      required_bytes_(required_bytes),
      budget_bytes_(budget_bytes) {}

}  // namespace citerank
