#include "scmix/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "scmix/metrics.hpp"
#include "scmix/preprocess.hpp"
#include "scmix/util.hpp"

namespace scmix {
namespace {

using nlohmann::json;

template <typename T>
T field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw EmbeddingParseError(std::string("missing field '") + key + "'", line);
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw EmbeddingParseError(std::string("field '") + key + "' has the wrong type", line);
  }
}

struct CellOutput {
  std::vector<SimilarityRow> rows;
  std::vector<CellError> errors;
};

}  // namespace

std::string distorted_filename(std::string_view stem, IllusionVariant variant, int degree) {
  return std::string(stem) + "__" + std::string(variant_name(variant)) + "__d" + std::to_string(degree) + ".png";
}

std::vector<EmbeddingRecord> parse_embeddings(std::string_view text) {
  std::vector<EmbeddingRecord> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw EmbeddingParseError(std::string("malformed JSON: ") + e.what(), line);
    }
    if (!obj.is_object()) throw EmbeddingParseError("record must be a JSON object", line);

    EmbeddingRecord r;
    r.image_id = field<std::string>(obj, "image_id", line);
    r.encoder_id = field<std::string>(obj, "encoder_id", line);
    r.pooling = field<std::string>(obj, "pooling", line);
    r.dim = field<int>(obj, "dim", line);
    const auto it = obj.find("vector");
    if (it == obj.end() || !it->is_array()) throw EmbeddingParseError("field 'vector' must be an array", line);
    r.vector.reserve(it->size());
    for (const auto& v : *it) {
      if (!v.is_number()) throw EmbeddingParseError("vector entries must be numbers", line);
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw EmbeddingParseError("vector entries must be finite", line);
      r.vector.push_back(d);
    }
    if (r.image_id.empty() || r.encoder_id.empty()) throw EmbeddingParseError("empty image_id or encoder_id", line);
    if (r.dim < 1) throw EmbeddingParseError("dim must be >= 1", line);
    if (r.vector.size() != static_cast<std::size_t>(r.dim)) {
      throw EmbeddingParseError("vector length " + std::to_string(r.vector.size()) + " does not match dim " +
                                    std::to_string(r.dim),
                                line);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EmbeddingRecord> load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str());
}

EmbeddingIndex index_embeddings(const std::vector<EmbeddingRecord>& records) {
  EmbeddingIndex index;
  for (const auto& r : records) {
    if (!index[r.encoder_id].emplace(r.image_id, r.vector).second) {
      throw std::runtime_error("duplicate embedding for image '" + r.image_id + "' encoder '" + r.encoder_id + "'");
    }
  }
  return index;
}

SimilarityReport similarity_report(const eval::DatasetManifest& originals, const std::filesystem::path& distorted_root,
                                   const SimilarityRequest& request, const EmbeddingIndex* embeddings) {
  struct CellRef {
    std::size_t entry;
    IllusionVariant variant;
    int degree;
  };
  std::vector<CellRef> cells;
  for (std::size_t e = 0; e < originals.entries.size(); ++e) {
    for (const auto v : request.variants) {
      for (const int d : request.degrees) cells.push_back({e, v, d});
    }
  }

  std::vector<CellOutput> outputs(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      const CellRef& cell = cells[i];
      const auto& entry = originals.entries[cell.entry];
      const std::string variant(variant_name(cell.variant));
      CellOutput& out = outputs[i];
      auto fail = [&](const std::string& msg) { out.errors.push_back({entry.image_id, variant, cell.degree, msg}); };
      auto emit = [&](const char* metric, const std::string& encoder, double value) {
        out.rows.push_back({entry.image_id, variant, cell.degree, metric, encoder, value});
      };

      const std::string stem = entry.path.stem().string();
      const std::string name = distorted_filename(stem, cell.variant, cell.degree);
      try {
        RgbImage original = read_image(entry.path);
        const RgbImage distorted = read_image(distorted_root / name);
        if (original.width() != distorted.width() || original.height() != distorted.height()) {
          original = resize_bilinear(original, distorted.width(), distorted.height());
        }
        try {
          emit("ssim", "", ssim(original, distorted));
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
        emit("hist_corr", "", histogram_correlation(original, distorted));
      } catch (const std::exception& e) {
        fail(e.what());
      }

      if (embeddings == nullptr) continue;
      const std::string distorted_id = std::filesystem::path(name).stem().string();
      for (const auto& [encoder, vectors] : *embeddings) {
        const auto a = vectors.find(entry.image_id);
        const auto b = vectors.find(distorted_id);
        if (a == vectors.end() || b == vectors.end()) {
          fail("encoder '" + encoder + "' has no embedding for '" +
               (a == vectors.end() ? entry.image_id : distorted_id) + "'");
          continue;
        }
        try {
          emit("cosine", encoder, cosine_similarity(a->second, b->second));
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
    }
  };

  unsigned threads = request.threads ? request.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  SimilarityReport report;
  for (auto& out : outputs) {
    std::move(out.rows.begin(), out.rows.end(), std::back_inserter(report.rows));
    std::move(out.errors.begin(), out.errors.end(), std::back_inserter(report.errors));
  }
  return report;
}

std::vector<SimilarityAggregate> SimilarityReport::aggregates() const {
  using Key = std::tuple<std::string, int, std::string, std::string>;
  std::map<Key, std::pair<double, std::size_t>> sums;
  for (const auto& r : rows) {
    auto& [sum, count] = sums[{r.variant, r.degree, r.metric, r.encoder_id}];
    sum += r.value;
    ++count;
  }
  std::vector<SimilarityAggregate> out;
  for (const auto& [key, acc] : sums) {
    SimilarityAggregate a;
    std::tie(a.variant, a.degree, a.metric, a.encoder_id) = key;
    a.mean = acc.first / static_cast<double>(acc.second);
    a.count = acc.second;
    out.push_back(std::move(a));
  }
  return out;
}

void write_similarity_csv(std::ostream& out, const std::vector<SimilarityRow>& rows) {
  out << "image_id,variant,degree,metric,encoder_id,value\n";
  for (const auto& r : rows) {
    out << csv_field(r.image_id) << ',' << r.variant << ',' << r.degree << ',' << r.metric << ','
        << csv_field(r.encoder_id) << ',' << format_double(r.value) << '\n';
  }
}

void write_similarity_aggregate_csv(std::ostream& out, const std::vector<SimilarityAggregate>& rows) {
  out << "variant,degree,metric,encoder_id,mean,count\n";
  for (const auto& r : rows) {
    out << r.variant << ',' << r.degree << ',' << r.metric << ',' << csv_field(r.encoder_id) << ','
        << format_double(r.mean) << ',' << r.count << '\n';
  }
}

}  // namespace scmix
