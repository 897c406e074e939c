#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scmix/eval/client.hpp"
#include "scmix/illusion.hpp"
#include "scmix/preprocess.hpp"

namespace scmix::cli {

/// Bad config file, bad flag value or an unusable combination of the two.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a sweep or similarity run needs. Paths are absolute once loaded.
///
/// File format (JSON; relative paths resolve against the file's directory):
///   {
///     "manifest":   "animals.jsonl",
///     "output_dir": "runs/qwen",
///     "variants":   ["scmix1", "ostwald_checker"]   or "all",
///     "degrees":    [2, 4, 8, 16],
///     "preprocess": ["none", "du8", "blur5"],
///     "seed":       0,
///     "endpoint":   { "base_url": ..., "model": ..., "api_key_env": ..., ... }
///   }
struct RunConfig {
  std::filesystem::path manifest;
  std::filesystem::path output_dir;
  std::vector<IllusionVariant> variants;
  std::vector<int> degrees;
  std::vector<PreprocessSpec> preprocess{PreprocessSpec{}};
  std::uint64_t seed = 0;
  std::optional<eval::EndpointConfig> endpoint;

  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);
};

/// Comma-separated lists as given on the command line or in a config array.
std::vector<IllusionVariant> parse_variants(const std::vector<std::string>& names);
std::vector<PreprocessSpec> parse_preprocess_tags(const std::vector<std::string>& tags);

}  // namespace scmix::cli
