#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scmix/eval/client.hpp"
#include "scmix/eval/manifest.hpp"
#include "scmix/eval/results.hpp"
#include "scmix/illusion.hpp"
#include "scmix/preprocess.hpp"

namespace scmix::eval {

struct SweepPlan {
  std::vector<IllusionVariant> variants;
  std::vector<int> degrees;  // 1 is always added as the undistorted baseline
  std::vector<PreprocessSpec> preprocess{PreprocessSpec{}};
  std::uint64_t seed = 0;
};

struct SweepOptions {
  /// Stop handing out new cells once this many rows were written (0 = no limit).
  /// Used to exercise interrupted runs.
  std::size_t stop_after_rows = 0;
};

struct SweepSummary {
  std::size_t cells = 0;
  std::size_t rows_written = 0;
  std::size_t rows_skipped = 0;  // already complete from an earlier run
  std::size_t failed_rows = 0;
  bool stopped_early = false;
};

/// Text sent for one question of an entry.
std::string question_prompt(const ManifestEntry& entry, int question_index);

/// The image the model sees for one cell: canonical resize, distortion, preprocessing.
RgbImage render_cell(const RgbImage& original, const DistortionSpec& distortion, const PreprocessSpec& preprocess);

/// Runs every (entry x variant x degree x preprocess) cell against the endpoint,
/// appending one row per question to `results_path`. Rows already present and
/// not failed are not re-queried. Throws std::invalid_argument on a bad plan
/// before any request, and AuthError if the endpoint rejects credentials.
SweepSummary run_sweep(const DatasetManifest& manifest, const ChatClient& client, SweepPlan plan,
                       const std::filesystem::path& results_path, const SweepOptions& options = {});

}  // namespace scmix::eval
