#include "citerank/manifest.hpp"

#include <fstream>

#include "citerank/error.hpp"
#include "citerank/metrics.hpp"

namespace citerank {

RunManifest::RunManifest(std::string subcommand) {
  entries_.emplace_back("subcommand", std::move(subcommand));
}

void RunManifest::set(std::string_view key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::string(key), std::move(value));
}

std::optional<std::string> RunManifest::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void RunManifest::record_stage(std::string_view stage, double seconds) {
  set("time." + std::string(stage), format_shortest(seconds));
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Module::cli, "cannot write '" + path.string() + "'");
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  if (!out) throw Error(Module::cli, "write failure on '" + path.string() + "'");
}

RunManifest RunManifest::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Module::cli, "cannot read '" + path.string() + "'");
  RunManifest manifest;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(Module::cli, "bad manifest line '" + line + "' in '" +
                                   path.string() + "'");
    }
    manifest.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return manifest;
}

StageTimer::StageTimer(RunManifest& manifest, std::string stage)
    : manifest_(manifest),
      stage_(std::move(stage)),
      start_(std::chrono::steady_clock::now()) {}

StageTimer::~StageTimer() {
  if (!stopped_) stop();
}

double StageTimer::stop() {
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start_;
  stopped_ = true;
  manifest_.record_stage(stage_, elapsed.count());
  return elapsed.count();
}

}  // namespace citerank
