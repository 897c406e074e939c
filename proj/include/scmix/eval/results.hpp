#pragma once

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "scmix/eval/manifest.hpp"

namespace scmix::eval {

/// One scored response for one (image, variant, degree, preprocess, question) cell.
struct ResultRow {
  std::string dataset_name;
  std::string model_name;
  std::string variant;
  int degree = 1;
  std::string preprocess = "none";
  std::string image_id;
  int question_index = 0;
  TaskKind task = TaskKind::ExactMatch;
  std::string raw_response;
  bool correct = false;
  bool failed = false;  // query never succeeded; raw_response is empty
  std::string error;
  int attempts = 0;
  double latency_ms = 0;
  std::string timestamp;

  /// Identity of the cell/question this row answers.
  std::string key() const;

  nlohmann::json to_json() const;
  static ResultRow from_json(const nlohmann::json& j);  // throws on missing/mistyped fields
};

struct ResultsFile {
  std::vector<ResultRow> rows;
  std::vector<std::size_t> malformed_lines;  // 1-based
};

/// Reads every parseable row; unparseable lines are reported, not fatal. A
/// missing file reads as empty.
ResultsFile read_results(const std::filesystem::path& path);

/// Drops a trailing partial record left by an interrupted write.
void repair_results_tail(const std::filesystem::path& path);

/// Append-only, line-per-row writer. Each append is flushed and synced before
/// returning. Safe to call from several threads.
class ResultsWriter {
 public:
  explicit ResultsWriter(const std::filesystem::path& path);
  ~ResultsWriter();
  ResultsWriter(const ResultsWriter&) = delete;
  ResultsWriter& operator=(const ResultsWriter&) = delete;

  void append(const ResultRow& row);

 private:
  std::FILE* file_;
  std::mutex mutex_;
};

}  // namespace scmix::eval
