#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "CLI11.hpp"
#include "run_config.hpp"
#include "scmix/eval/aggregate.hpp"
#include "scmix/eval/sweep.hpp"
#include "scmix/illusion.hpp"
#include "scmix/image.hpp"
#include "scmix/preprocess.hpp"
#include "scmix/similarity.hpp"

namespace scmix::cli {
namespace {

namespace fs = std::filesystem;

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Files are taken as given (a bad one is a per-file failure later); directories
// contribute their image files, sorted, non-recursively.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  if (out.empty()) throw ConfigError("no input images found");
  return out;
}

void check_degrees(const std::vector<int>& degrees) {
  for (const int d : degrees) {
    if (d < 1) throw ConfigError("degree must be >= 1, got " + std::to_string(d));
  }
}

void make_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

// ---------------------------------------------------------------------------

struct DistortArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> variants;
  std::vector<int> degrees;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool canonical = false;
};

int cmd_distort(const DistortArgs& a, std::ostream& out, std::ostream& err) {
  const auto variants = parse_variants(a.variants);
  check_degrees(a.degrees);
  const auto files = collect_inputs(a.inputs);
  make_output_dir(a.out_dir);

  std::size_t failures = 0;
  std::size_t written = 0;
  for (const auto& file : files) {
    try {
      RgbImage img = read_image(file);
      if (a.canonical) img = resize_canonical(img);
      for (const auto v : variants) {
        for (const int d : a.degrees) {
          write_png(fs::path(a.out_dir) / distorted_filename(file.stem().string(), v, d), apply({v, d, a.seed}, img));
          ++written;
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      err << "error: " << file.string() << ": " << e.what() << "\n";
    }
  }
  out << "wrote " << written << " images from " << files.size() - failures << " of " << files.size() << " inputs\n";
  return failures ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

struct PreprocessArgs {
  std::vector<std::string> inputs;
  std::vector<int> down_up;
  std::vector<int> box_blur;
  std::string out_dir;
  const CLI::Option* down_up_opt = nullptr;
  const CLI::Option* box_blur_opt = nullptr;
};

// Rebuilds the step chain in the order the flags appeared.
PreprocessSpec chain_from_flags(const PreprocessArgs& a, const CLI::App& sub) {
  std::string tag;
  std::size_t du = 0;
  std::size_t blur = 0;
  for (const CLI::Option* opt : sub.parse_order()) {
    std::string step;
    if (opt == a.down_up_opt && du < a.down_up.size()) step = "du" + std::to_string(a.down_up[du++]);
    else if (opt == a.box_blur_opt && blur < a.box_blur.size()) step = "blur" + std::to_string(a.box_blur[blur++]);
    else continue;
    tag += (tag.empty() ? "" : "+") + step;
  }
  if (tag.empty()) throw ConfigError("give at least one of --down-up or --box-blur");
  try {
    return PreprocessSpec::parse(tag);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cmd_preprocess(const PreprocessArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  for (const int f : a.down_up) {
    if (f < 1) throw ConfigError("--down-up factor must be >= 1, got " + std::to_string(f));
  }
  const PreprocessSpec spec = chain_from_flags(a, sub);
  const auto files = collect_inputs(a.inputs);
  make_output_dir(a.out_dir);

  std::size_t failures = 0;
  for (const auto& file : files) {
    try {
      write_png(fs::path(a.out_dir) / (file.stem().string() + "__" + spec.tag() + ".png"),
                apply_preprocess(spec, read_image(file)));
    } catch (const std::exception& e) {
      ++failures;
      err << "error: " << file.string() << ": " << e.what() << "\n";
    }
  }
  out << "applied " << spec.tag() << " to " << files.size() - failures << " of " << files.size() << " inputs\n";
  return failures ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

struct RunOverrides {
  std::string config;
  std::string manifest;
  std::string out_dir;
  std::vector<std::string> variants;
  std::vector<int> degrees;
  std::vector<std::string> preprocess;
  std::optional<std::uint64_t> seed;
  std::string base_url;
  std::string model;
  std::optional<int> max_in_flight;
};

void add_run_flags(CLI::App* sub, RunOverrides& o) {
  sub->add_option("--manifest", o.manifest, "Dataset manifest (JSONL); overrides the config");
  sub->add_option("--variants", o.variants, "Comma-separated variant names or 'all'")->delimiter(',');
  sub->add_option("--degrees", o.degrees, "Comma-separated degrees")->delimiter(',');
}

RunConfig resolve_run(const RunOverrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  if (!o.manifest.empty()) c.manifest = fs::absolute(o.manifest);
  if (!o.out_dir.empty()) c.output_dir = fs::absolute(o.out_dir);
  if (!o.variants.empty()) c.variants = parse_variants(o.variants);
  if (!o.degrees.empty()) c.degrees = o.degrees;
  if (!o.preprocess.empty()) c.preprocess = parse_preprocess_tags(o.preprocess);
  if (o.seed) c.seed = *o.seed;
  if (!o.base_url.empty() || !o.model.empty() || o.max_in_flight) {
    if (!c.endpoint) c.endpoint.emplace();
    if (!o.base_url.empty()) c.endpoint->base_url = o.base_url;
    if (!o.model.empty()) c.endpoint->model_name = o.model;
    if (o.max_in_flight) c.endpoint->max_in_flight = *o.max_in_flight;
  }
  if (c.manifest.empty()) throw ConfigError("no manifest given (config 'manifest' or --manifest)");
  if (c.output_dir.empty()) throw ConfigError("no output directory given (config 'output_dir' or --out)");
  if (c.variants.empty()) throw ConfigError("no variants given");
  check_degrees(c.degrees);
  return c;
}

int cmd_sweep(const RunOverrides& o, std::size_t stop_after, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve_run(o);
  if (!c.endpoint) throw ConfigError("no endpoint configured");
  try {
    c.endpoint->validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("endpoint: ") + e.what());
  }
  const eval::DatasetManifest manifest = eval::load_manifest(c.manifest);
  make_output_dir(c.output_dir);

  eval::ChatClient client(*c.endpoint);
  const fs::path results = c.output_dir / "results.jsonl";
  const eval::SweepSummary s =
      eval::run_sweep(manifest, client, {c.variants, c.degrees, c.preprocess, c.seed}, results, {stop_after});

  const eval::AccuracyTable table = eval::aggregate(results);
  std::ofstream csv(c.output_dir / "accuracy.csv");
  eval::write_accuracy_csv(csv, table);

  out << "cells " << s.cells << ", rows written " << s.rows_written << ", skipped " << s.rows_skipped << ", failed "
      << s.failed_rows << (s.stopped_early ? " (stopped early)" : "") << "\n";
  if (s.failed_rows) err << "warning: " << s.failed_rows << " rows failed; rerun the sweep to retry them\n";
  return s.failed_rows ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_aggregate(const std::vector<std::string>& inputs, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  std::vector<eval::ResultRow> rows;
  std::size_t malformed = 0;
  for (const auto& in : inputs) {
    if (!fs::is_regular_file(in)) throw ConfigError("no such results file: " + in);
    eval::ResultsFile f = eval::read_results(in);
    for (const std::size_t line : f.malformed_lines) err << "warning: " << in << ":" << line << ": malformed row skipped\n";
    malformed += f.malformed_lines.size();
    std::move(f.rows.begin(), f.rows.end(), std::back_inserter(rows));
  }
  const eval::AccuracyTable table = eval::aggregate(rows);
  if (out_path.empty()) {
    eval::write_accuracy_csv(out, table);
  } else {
    std::ofstream file(out_path);
    if (!file) throw ConfigError("cannot write " + out_path);
    eval::write_accuracy_csv(file, table);
  }
  return malformed ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_similarity(const RunOverrides& o, const std::string& distorted, const std::string& embeddings_path,
                   unsigned threads, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve_run(o);
  if (c.degrees.empty()) throw ConfigError("no degrees given");
  if (!fs::is_directory(distorted)) throw ConfigError("no such distorted-image directory: " + distorted);
  const eval::DatasetManifest manifest = eval::load_manifest(c.manifest);

  std::optional<EmbeddingIndex> index;
  if (!embeddings_path.empty()) {
    try {
      index = index_embeddings(load_embeddings(embeddings_path));
    } catch (const std::exception& e) {
      throw ConfigError(embeddings_path + ": " + e.what());
    }
  }
  make_output_dir(c.output_dir);
  const SimilarityReport report =
      similarity_report(manifest, distorted, {c.variants, c.degrees, threads}, index ? &*index : nullptr);

  std::ofstream rows(c.output_dir / "similarity.csv");
  write_similarity_csv(rows, report.rows);
  std::ofstream summary(c.output_dir / "similarity_summary.csv");
  write_similarity_aggregate_csv(summary, report.aggregates());

  for (const auto& e : report.errors) {
    err << "error: " << e.image_id << " " << e.variant << " d" << e.degree << ": " << e.message << "\n";
  }
  out << report.rows.size() << " similarity rows, " << report.errors.size() << " cell errors\n";
  return report.errors.empty() ? kExitOk : kExitPartial;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial colour mixing illusions: generation, preprocessing and VLM evaluation", "scmix"};
  app.require_subcommand(1);

  DistortArgs dist;
  CLI::App* distort = app.add_subcommand("distort", "Render illusion images");
  distort->add_option("inputs", dist.inputs, "Image files or directories (PNG/JPEG)")->required();
  distort->add_option("--variant", dist.variants, "Variant name(s), comma-separated, or 'all'")->delimiter(',')->required();
  distort->add_option("--degree", dist.degrees, "Degree(s), comma-separated")->delimiter(',')->required();
  distort->add_option("--seed", dist.seed, "Seed for the random variant");
  distort->add_option("-o,--out", dist.out_dir, "Output directory")->required();
  distort->add_flag("--canonical", dist.canonical, "Resize to 360x360 before distorting");

  PreprocessArgs pre;
  CLI::App* preprocess = app.add_subcommand("preprocess", "Apply low-pass steps in command-line order");
  preprocess->add_option("inputs", pre.inputs, "Image files or directories (PNG/JPEG)")->required();
  pre.down_up_opt = preprocess->add_option("--down-up", pre.down_up, "Area downscale by F then bilinear upscale")
                        ->expected(1)
                        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  pre.box_blur_opt = preprocess->add_option("--box-blur", pre.box_blur, "Box blur with odd kernel K")
                         ->expected(1)
                         ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  preprocess->add_option("-o,--out", pre.out_dir, "Output directory")->required();

  RunOverrides sweep_o;
  std::size_t stop_after = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Query an endpoint over every (image, variant, degree, preprocess) cell");
  sweep->add_option("-c,--config", sweep_o.config, "Run config (JSON)")->required();
  add_run_flags(sweep, sweep_o);
  sweep->add_option("--preprocess", sweep_o.preprocess, "Comma-separated preprocess tags, e.g. none,du8,blur5")
      ->delimiter(',');
  sweep->add_option("--seed", sweep_o.seed, "Seed for the random variant");
  sweep->add_option("-o,--out", sweep_o.out_dir, "Output directory; overrides the config");
  sweep->add_option("--base-url", sweep_o.base_url, "Endpoint base URL; overrides the config");
  sweep->add_option("--model", sweep_o.model, "Model name; overrides the config");
  sweep->add_option("--max-in-flight", sweep_o.max_in_flight, "Concurrent requests; overrides the config");
  sweep->add_option("--stop-after", stop_after, "Stop after writing this many rows (0 = run to completion)");

  std::vector<std::string> agg_inputs;
  std::string agg_out;
  CLI::App* aggregate = app.add_subcommand("aggregate", "Accuracy table from results files");
  aggregate->add_option("results", agg_inputs, "results.jsonl file(s)")->required();
  aggregate->add_option("-o,--out", agg_out, "CSV output path (default: stdout)");

  RunOverrides sim_o;
  std::string distorted_dir;
  std::string embeddings;
  unsigned threads = 0;
  CLI::App* similarity = app.add_subcommand("similarity", "SSIM, histogram and embedding similarity tables");
  similarity->add_option("-c,--config", sim_o.config, "Run config (JSON); only manifest, variants, degrees and output_dir are used");
  add_run_flags(similarity, sim_o);
  similarity->add_option("--distorted", distorted_dir, "Directory of distorted images")->required();
  similarity->add_option("--embeddings", embeddings, "Embeddings JSONL for cosine rows");
  similarity->add_option("-o,--out", sim_o.out_dir, "Output directory; overrides the config");
  similarity->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (distort->parsed()) return cmd_distort(dist, out, err);
    if (preprocess->parsed()) return cmd_preprocess(pre, *preprocess, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_o, stop_after, out, err);
    if (aggregate->parsed()) return cmd_aggregate(agg_inputs, agg_out, out, err);
    if (similarity->parsed()) return cmd_similarity(sim_o, distorted_dir, embeddings, threads, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eval::ManifestError& e) {
    err << "error: manifest: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eval::AuthError& e) {
    err << "error: endpoint rejected credentials: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitUsage;
}

}  // namespace scmix::cli
