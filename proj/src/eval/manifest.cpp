#include "scmix/eval/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace scmix::eval {
namespace {

using nlohmann::json;

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ManifestError(std::string("missing or non-string field '") + key + "'", line);
  }
  return it->get<std::string>();
}

std::string optional_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ManifestError(std::string("field '") + key + "' must be a string", line);
  return it->get<std::string>();
}

ManifestEntry parse_entry(const json& obj, const std::filesystem::path& base_dir, std::size_t line) {
  static const std::set<std::string> known{"image_id", "path", "label", "prompt", "task", "qa_pairs"};
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw ManifestError("unknown field '" + key + "'", line);
  }

  ManifestEntry e;
  e.image_id = required_string(obj, "image_id", line);
  if (e.image_id.empty()) throw ManifestError("empty image_id", line);
  const std::filesystem::path p = required_string(obj, "path", line);
  e.path = p.is_absolute() ? p : base_dir / p;
  e.label = lowercase(trim(optional_string(obj, "label", line)));

  const std::string prompt = optional_string(obj, "prompt", line);
  if (prompt.starts_with("preset:")) {
    const auto preset = prompt_preset(std::string_view(prompt).substr(7));
    if (!preset) throw ManifestError("unknown prompt preset '" + prompt + "'", line);
    e.prompt = *preset;
  } else {
    e.prompt = prompt;
  }

  const std::string task = optional_string(obj, "task", line);
  if (task.empty() || task == "exact_match") {
    e.task = TaskKind::ExactMatch;
  } else if (task == "mme_pair") {
    e.task = TaskKind::MmePair;
  } else {
    throw ManifestError("unknown task '" + task + "'", line);
  }

  if (const auto it = obj.find("qa_pairs"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw ManifestError("qa_pairs must be an array", line);
    for (const auto& qa : *it) {
      if (!qa.is_object()) throw ManifestError("qa_pairs items must be objects", line);
      e.qa_pairs.push_back({required_string(qa, "question", line), lowercase(trim(required_string(qa, "answer", line)))});
    }
  }

  if (e.task == TaskKind::ExactMatch) {
    if (e.label.empty()) throw ManifestError("exact_match entry '" + e.image_id + "' needs a non-empty label", line);
    if (!e.qa_pairs.empty()) throw ManifestError("exact_match entry '" + e.image_id + "' must not have qa_pairs", line);
  } else {
    if (e.qa_pairs.size() != 2) {
      throw ManifestError("mme_pair entry '" + e.image_id + "' needs exactly two qa_pairs, got " +
                              std::to_string(e.qa_pairs.size()),
                          line);
    }
    for (const auto& qa : e.qa_pairs) {
      if (qa.gold != "yes" && qa.gold != "no") {
        throw ManifestError("mme_pair answers must be yes or no, got '" + qa.gold + "'", line);
      }
    }
  }
  return e;
}

}  // namespace

std::string_view task_name(TaskKind t) { return t == TaskKind::ExactMatch ? "exact_match" : "mme_pair"; }

std::optional<std::string> prompt_preset(std::string_view name) {
  if (name == "animals") {
    return std::string(
        "What can you distinguish in this image? Please answer with one of the following: cat, dog, bee, eagle, "
        "cow, elephant, panda, tiger, horse, lion, penguin, bear, butterfly, flamingo, parrot, snake, bison, "
        "hippopotamus, hyena.");
  }
  if (name == "artworks") return std::string("Who is the artist that painted the artwork shown in the image?");
  if (name == "landmarks") return std::string("What can you distinguish in this image?");
  return std::nullopt;
}

DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                               std::string default_name) {
  DatasetManifest m;
  m.dataset_name = std::move(default_name);
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool first_record = true;
  while (std::getline(in, raw)) {
    ++line;
    if (trim(raw).empty()) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ManifestError(std::string("malformed JSON: ") + e.what(), line);
    }
    if (!obj.is_object()) throw ManifestError("record must be a JSON object", line);

    if (obj.size() == 1 && obj.contains("dataset_name")) {
      if (!first_record) throw ManifestError("dataset_name header must be the first record", line);
      m.dataset_name = required_string(obj, "dataset_name", line);
      first_record = false;
      continue;
    }
    first_record = false;

    ManifestEntry e = parse_entry(obj, base_dir, line);
    if (!seen.insert(e.image_id).second) throw ManifestError("duplicate image_id '" + e.image_id + "'", line);
    m.entries.push_back(std::move(e));
  }
  if (m.entries.empty()) throw ManifestError("manifest has no entries");
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path(), path.stem().string());
}

}  // namespace scmix::eval
