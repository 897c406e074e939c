#include "scmix/eval/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "scmix/eval/scoring.hpp"
#include "scmix/util.hpp"

namespace scmix::eval {
namespace {

struct Cell {
  std::size_t entry = 0;
  DistortionSpec distortion;
  const PreprocessSpec* preprocess = nullptr;
  std::vector<int> pending_questions;
};

// Canonical-size originals, decoded once per entry.
class OriginalCache {
 public:
  explicit OriginalCache(const DatasetManifest& m) : manifest_(m), slots_(m.entries.size()) {}

  std::shared_ptr<const RgbImage> get(std::size_t entry, std::string& error) {
    Slot& slot = slots_[entry];
    std::lock_guard lock(slot.mutex);
    if (!slot.loaded) {
      slot.loaded = true;
      try {
        slot.image = std::make_shared<const RgbImage>(resize_canonical(read_image(manifest_.entries[entry].path)));
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
    error = slot.error;
    return slot.image;
  }

 private:
  struct Slot {
    std::mutex mutex;
    bool loaded = false;
    std::shared_ptr<const RgbImage> image;
    std::string error;
  };
  const DatasetManifest& manifest_;
  std::vector<Slot> slots_;
};

void normalize_plan(SweepPlan& plan) {
  if (plan.variants.empty()) throw std::invalid_argument("sweep needs at least one variant");
  for (const int d : plan.degrees) {
    if (d < 1) throw std::invalid_argument("degrees must be >= 1, got " + std::to_string(d));
  }
  plan.degrees.push_back(1);
  std::sort(plan.degrees.begin(), plan.degrees.end());
  plan.degrees.erase(std::unique(plan.degrees.begin(), plan.degrees.end()), plan.degrees.end());

  std::vector<IllusionVariant> variants;
  for (const auto v : plan.variants) {
    if (std::find(variants.begin(), variants.end(), v) == variants.end()) variants.push_back(v);
  }
  plan.variants = std::move(variants);

  if (plan.preprocess.empty()) plan.preprocess.emplace_back();
  std::set<std::string> tags;
  for (const auto& p : plan.preprocess) {
    if (!tags.insert(p.tag()).second) throw std::invalid_argument("duplicate preprocess spec '" + p.tag() + "'");
    for (const auto& step : p.steps) {
      if (step.kind == PreprocessStep::Kind::DownUp && step.param > kCanonicalSize) {
        throw std::invalid_argument("D/U factor exceeds the canonical image size");
      }
    }
  }
}

}  // namespace

std::string question_prompt(const ManifestEntry& entry, int question_index) {
  if (entry.task == TaskKind::ExactMatch) return entry.prompt;
  const std::string& q = entry.qa_pairs.at(static_cast<std::size_t>(question_index)).question;
  return entry.prompt.empty() ? q : entry.prompt + "\n" + q;
}

RgbImage render_cell(const RgbImage& original, const DistortionSpec& distortion, const PreprocessSpec& preprocess) {
  return apply_preprocess(preprocess, apply(distortion, resize_canonical(original)));
}

SweepSummary run_sweep(const DatasetManifest& manifest, const ChatClient& client, SweepPlan plan,
                       const std::filesystem::path& results_path, const SweepOptions& options) {
  normalize_plan(plan);
  const EndpointConfig& endpoint = client.endpoint();

  if (results_path.has_parent_path()) std::filesystem::create_directories(results_path.parent_path());
  repair_results_tail(results_path);
  std::set<std::string> done;
  for (const auto& row : read_results(results_path).rows) {
    if (!row.failed) done.insert(row.key());
  }

  SweepSummary summary;
  std::vector<Cell> cells;
  ResultRow proto;
  proto.dataset_name = manifest.dataset_name;
  proto.model_name = endpoint.model_name;
  for (std::size_t e = 0; e < manifest.entries.size(); ++e) {
    const ManifestEntry& entry = manifest.entries[e];
    const int questions = entry.task == TaskKind::MmePair ? 2 : 1;
    for (const auto variant : plan.variants) {
      for (const int degree : plan.degrees) {
        for (const auto& pre : plan.preprocess) {
          ++summary.cells;
          Cell cell{e, {variant, degree, plan.seed}, &pre, {}};
          ResultRow probe = proto;
          probe.variant = std::string(variant_name(variant));
          probe.degree = degree;
          probe.preprocess = pre.tag();
          probe.image_id = entry.image_id;
          for (int q = 0; q < questions; ++q) {
            probe.question_index = q;
            if (done.contains(probe.key())) {
              ++summary.rows_skipped;
            } else {
              cell.pending_questions.push_back(q);
            }
          }
          if (!cell.pending_questions.empty()) cells.push_back(std::move(cell));
        }
      }
    }
  }

  ResultsWriter writer(results_path);
  OriginalCache originals(manifest);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> written{0};
  std::atomic<std::size_t> failed{0};
  std::atomic<bool> abort{false};
  std::atomic<bool> stopped{false};
  std::mutex error_mutex;
  std::exception_ptr fatal;

  auto worker = [&] {
    while (!abort.load()) {
      if (options.stop_after_rows != 0 && written.load() >= options.stop_after_rows) {
        stopped.store(true);
        return;
      }
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const Cell& cell = cells[idx];
      const ManifestEntry& entry = manifest.entries[cell.entry];

      try {
        std::string load_error;
        const auto original = originals.get(cell.entry, load_error);
        std::optional<RgbImage> rendered;
        if (original) {
          try {
            rendered = apply_preprocess(*cell.preprocess, apply(cell.distortion, *original));
          } catch (const std::exception& e) {
            load_error = e.what();
          }
        }

        std::vector<ResultRow> rows;
        for (const int q : cell.pending_questions) {
          ResultRow row = proto;
          row.variant = std::string(variant_name(cell.distortion.variant));
          row.degree = cell.distortion.degree;
          row.preprocess = cell.preprocess->tag();
          row.image_id = entry.image_id;
          row.question_index = q;
          row.task = entry.task;

          if (!rendered) {
            row.failed = true;
            row.error = load_error;
          } else {
            const QueryResult res = client.query(build_request(question_prompt(entry, q), *rendered, endpoint));
            row.attempts = res.attempts;
            row.latency_ms = res.latency_ms;
            if (res.ok) {
              row.raw_response = res.text;
              if (entry.task == TaskKind::ExactMatch) {
                row.correct = score_exact_match(res.text, entry.label);
              } else {
                const auto verdict = parse_yes_no(res.text);
                row.correct = verdict.has_value() && *verdict == (entry.qa_pairs[static_cast<std::size_t>(q)].gold == "yes");
              }
            } else {
              row.failed = true;
              row.error = res.error;
            }
          }
          row.timestamp = utc_timestamp();
          writer.append(row);
          written.fetch_add(1);
          if (row.failed) failed.fetch_add(1);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!fatal) fatal = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(endpoint.max_in_flight),
                                                    std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (fatal) std::rethrow_exception(fatal);
  summary.rows_written = written.load();
  summary.failed_rows = failed.load();
  summary.stopped_early = stopped.load() && next.load() < cells.size();
  return summary;
}

}  // namespace scmix::eval
