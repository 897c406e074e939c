#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "scmix/eval/manifest.hpp"
#include "scmix/image.hpp"

namespace scmix::testing {

/// Deterministic synthetic "photo": gradient sky, overlapping shapes, low
/// frequency texture and mild noise. Draws come straight from mt19937_64, whose
/// output sequence is fixed by the standard.
RgbImage scene(std::uint64_t index, int width, int height);

/// Uniform random pixels.
RgbImage noise_image(std::mt19937_64& rng, int width, int height);

/// `count` scenes with indices [first, first + count).
std::vector<RgbImage> scene_set(std::uint64_t first, std::size_t count, int width, int height);

/// Uniform integer in [lo, hi] from a raw engine draw.
int uniform_int(std::mt19937_64& rng, int lo, int hi);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

/// Writes one scene PNG per label into `dir` and returns an exact-match
/// manifest over them. Each prompt ends in "[image_id]" so a mock endpoint can
/// tell which image it is looking at.
eval::DatasetManifest scene_dataset(const std::filesystem::path& dir, const std::vector<std::string>& labels,
                                    int width = 64, int height = 48, std::uint64_t first_scene = 200);

/// The id in the trailing "[...]" of a scene_dataset prompt, or "" if absent.
std::string prompt_image_id(const std::string& prompt);

/// Location of checked-in test data.
std::filesystem::path data_dir();

}  // namespace scmix::testing
