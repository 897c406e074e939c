#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scmix::eval {

enum class TaskKind { ExactMatch, MmePair };

std::string_view task_name(TaskKind t);

struct QaPair {
  std::string question;
  std::string gold;  // "yes" or "no"
};

struct ManifestEntry {
  std::string image_id;
  std::filesystem::path path;  // resolved against the manifest's directory
  std::string label;           // lowercase gold class; empty for MME entries
  std::string prompt;          // presets already expanded
  TaskKind task = TaskKind::ExactMatch;
  std::vector<QaPair> qa_pairs;
};

struct DatasetManifest {
  std::string dataset_name;
  std::vector<ManifestEntry> entries;
};

/// Parse or validation failure. `line` is 1-based, 0 when not tied to a line.
class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads a line-delimited JSON manifest. An optional first record of the form
/// {"dataset_name": "..."} names the dataset; otherwise the file stem is used.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Same, from text; relative image paths resolve against `base_dir`.
DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                               std::string default_name);

/// Built-in prompt presets, selected in a manifest as "preset:<name>".
std::optional<std::string> prompt_preset(std::string_view name);

}  // namespace scmix::eval
