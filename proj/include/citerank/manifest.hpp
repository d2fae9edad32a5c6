#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citerank {

// Record of one tool run: every parameter that shaped the outputs plus
// wall-clock time per stage. Stored as `key=value` lines, stages as
// `time.<stage>=<seconds>`.
class RunManifest {
 public:
  RunManifest() = default;
  explicit RunManifest(std::string subcommand);

  void set(std::string_view key, std::string value);
  std::optional<std::string> get(std::string_view key) const;
  void record_stage(std::string_view stage, double seconds);

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void write(const std::filesystem::path& path) const;
  // Throws Error(cli) if the file cannot be read or a line lacks '='.
  static RunManifest read(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Measures one stage and records it into a manifest when stopped or
// destroyed.
class StageTimer {
 public:
  StageTimer(RunManifest& manifest, std::string stage);
  ~StageTimer();
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

  double stop();

 private:
  RunManifest& manifest_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
  bool stopped_ = false;
};

}  // namespace citerank
