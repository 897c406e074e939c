#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scmix/eval/results.hpp"

namespace scmix::eval {

struct AccuracyRow {
  std::string dataset_name;
  std::string model_name;
  std::string variant;
  int degree = 1;
  std::string preprocess;
  int answered = 0;
  int correct = 0;
  int failed = 0;
  std::optional<double> accuracy;  // absent when nothing was answered
  bool mme = false;
  double acc = 0;       // MME only
  double acc_plus = 0;  // MME only
  int mme_images = 0;   // images with both questions answered

  double mme_score() const { return 100.0 * acc + 100.0 * acc_plus; }
};

struct AccuracyTable {
  std::vector<AccuracyRow> rows;
  std::vector<std::size_t> malformed_lines;
};

/// Later rows for the same cell/question replace earlier ones (a resumed run
/// retries failed cells).
AccuracyTable aggregate(const std::vector<ResultRow>& rows);
AccuracyTable aggregate(const std::filesystem::path& results_path);

void write_accuracy_csv(std::ostream& out, const AccuracyTable& table);

}  // namespace scmix::eval
