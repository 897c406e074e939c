#include "run_config.hpp"

#include <fstream>
#include <set>

namespace scmix::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys{"manifest", "output_dir", "variants", "degrees", "preprocess", "seed", "endpoint"};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  return std::filesystem::absolute(base / p).lexically_normal();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw ConfigError(std::string("'") + key + "' must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ConfigError(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<IllusionVariant> parse_variants(const std::vector<std::string>& names) {
  std::vector<IllusionVariant> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.insert(out.end(), kAllVariants.begin(), kAllVariants.end());
      continue;
    }
    const auto v = parse_variant(n);
    if (!v) throw ConfigError("unknown variant '" + n + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<PreprocessSpec> parse_preprocess_tags(const std::vector<std::string>& tags) {
  std::vector<PreprocessSpec> out;
  for (const auto& t : tags) {
    try {
      out.push_back(PreprocessSpec::parse(t));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("manifest")) c.manifest = resolve(base_dir, j.at("manifest").get<std::string>());
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    if (j.contains("variants")) c.variants = parse_variants(string_list(j.at("variants"), "variants"));
    if (j.contains("degrees")) c.degrees = j.at("degrees").get<std::vector<int>>();
    if (j.contains("preprocess")) c.preprocess = parse_preprocess_tags(string_list(j.at("preprocess"), "preprocess"));
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("endpoint")) {
      if (!j.at("endpoint").is_object()) throw ConfigError("'endpoint' must be an object");
      c.endpoint = eval::EndpointConfig::from_json(j.at("endpoint"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, std::filesystem::absolute(path).parent_path());
}

}  // namespace scmix::cli
