#include "scmix/eval/results.hpp"

#include <fstream>
#include <stdexcept>

#include <unistd.h>

namespace scmix::eval {

using nlohmann::json;

std::string ResultRow::key() const {
  // Unit separator keeps ids containing '|' unambiguous.
  const char sep = '\x1f';
  return dataset_name + sep + model_name + sep + variant + sep + std::to_string(degree) + sep + preprocess + sep +
         image_id + sep + std::to_string(question_index);
}

json ResultRow::to_json() const {
  json j = {
      {"dataset_name", dataset_name},
      {"model_name", model_name},
      {"variant", variant},
      {"degree", degree},
      {"preprocess", preprocess},
      {"image_id", image_id},
      {"question_index", question_index},
      {"task", std::string(task_name(task))},
      {"raw_response", raw_response},
      {"correct", correct},
      {"failed", failed},
      {"attempts", attempts},
      {"latency_ms", latency_ms},
      {"timestamp", timestamp},
  };
  if (!error.empty()) j["error"] = error;
  return j;
}

ResultRow ResultRow::from_json(const json& j) {
  ResultRow r;
  r.dataset_name = j.at("dataset_name").get<std::string>();
  r.model_name = j.at("model_name").get<std::string>();
  r.variant = j.at("variant").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.preprocess = j.at("preprocess").get<std::string>();
  r.image_id = j.at("image_id").get<std::string>();
  r.question_index = j.at("question_index").get<int>();
  const std::string task = j.at("task").get<std::string>();
  if (task == "exact_match") {
    r.task = TaskKind::ExactMatch;
  } else if (task == "mme_pair") {
    r.task = TaskKind::MmePair;
  } else {
    throw std::invalid_argument("unknown task '" + task + "'");
  }
  r.raw_response = j.at("raw_response").get<std::string>();
  r.correct = j.at("correct").get<bool>();
  r.failed = j.value("failed", false);
  r.error = j.value("error", "");
  r.attempts = j.value("attempts", 0);
  r.latency_ms = j.value("latency_ms", 0.0);
  r.timestamp = j.value("timestamp", "");
  if (r.degree < 1) throw std::invalid_argument("degree must be >= 1");
  return r;
}

ResultsFile read_results(const std::filesystem::path& path) {
  ResultsFile out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.rows.push_back(ResultRow::from_json(json::parse(line)));
    } catch (const std::exception&) {
      out.malformed_lines.push_back(n);
    }
  }
  return out;
}

void repair_results_tail(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return;
  std::ifstream in(path, std::ios::binary);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  if (data.back() == '\n') return;
  const auto last_newline = data.rfind('\n');
  std::filesystem::resize_file(path, last_newline == std::string::npos ? 0 : last_newline + 1);
}

ResultsWriter::ResultsWriter(const std::filesystem::path& path) : file_(std::fopen(path.c_str(), "ab")) {
  if (file_ == nullptr) throw std::runtime_error("cannot open results file for append: " + path.string());
}

ResultsWriter::~ResultsWriter() { std::fclose(file_); }

void ResultsWriter::append(const ResultRow& row) {
  const std::string line = row.to_json().dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  std::lock_guard lock(mutex_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
    throw std::runtime_error("failed to append result row");
  }
  ::fsync(::fileno(file_));
}

}  // namespace scmix::eval
