#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scmix/eval/manifest.hpp"
#include "scmix/illusion.hpp"

namespace scmix {

/// "<stem>__<variant>__d<degree>.png", the name every distorted image is written under.
std::string distorted_filename(std::string_view stem, IllusionVariant variant, int degree);

struct EmbeddingRecord {
  std::string image_id;
  std::string encoder_id;
  std::string pooling;
  int dim = 0;
  std::vector<double> vector;
};

class EmbeddingParseError : public std::runtime_error {
 public:
  EmbeddingParseError(const std::string& what, std::size_t line)
      : std::runtime_error("embeddings line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// encoder_id -> image_id -> vector.
using EmbeddingIndex = std::map<std::string, std::map<std::string, std::vector<double>>>;

/// Parses the line-delimited embeddings exchange file. Any malformed record is
/// fatal. Unknown extra keys are ignored.
std::vector<EmbeddingRecord> parse_embeddings(std::string_view text);
std::vector<EmbeddingRecord> load_embeddings(const std::filesystem::path& path);
EmbeddingIndex index_embeddings(const std::vector<EmbeddingRecord>& records);

struct SimilarityRow {
  std::string image_id;
  std::string variant;
  int degree = 1;
  std::string metric;      // "ssim", "hist_corr" or "cosine"
  std::string encoder_id;  // only for cosine
  double value = 0;
};

struct SimilarityAggregate {
  std::string variant;
  int degree = 1;
  std::string metric;
  std::string encoder_id;
  double mean = 0;
  std::size_t count = 0;
};

struct CellError {
  std::string image_id;
  std::string variant;
  int degree = 1;
  std::string message;
};

struct SimilarityReport {
  std::vector<SimilarityRow> rows;
  std::vector<CellError> errors;

  /// Arithmetic mean per (variant, degree, metric, encoder_id).
  std::vector<SimilarityAggregate> aggregates() const;
};

struct SimilarityRequest {
  std::vector<IllusionVariant> variants;
  std::vector<int> degrees;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Compares each manifest original with `<distorted_root>/<stem>__<variant>__d<degree>.png`.
/// When sizes differ the original is bilinearly resized to the distorted size.
/// Cosine rows use the original's image_id and the distorted file stem as ids.
/// Missing files become per-cell errors; the run continues.
SimilarityReport similarity_report(const eval::DatasetManifest& originals, const std::filesystem::path& distorted_root,
                                   const SimilarityRequest& request, const EmbeddingIndex* embeddings = nullptr);

void write_similarity_csv(std::ostream& out, const std::vector<SimilarityRow>& rows);
void write_similarity_aggregate_csv(std::ostream& out, const std::vector<SimilarityAggregate>& rows);

}  // namespace scmix
