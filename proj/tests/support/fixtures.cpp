#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace scmix::testing {
namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint8_t clamp_channel(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

RgbImage noise_image(std::mt19937_64& rng, int width, int height) {
  RgbImage img(width, height);
  for (RgbColor& c : img.pixels()) {
    const std::uint64_t v = rng();
    c = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16)};
  }
  return img;
}

RgbImage scene(std::uint64_t index, int width, int height) {
  std::mt19937_64 rng(0x5CE11E00ull + index * 7919ull);
  double top[3];
  double bottom[3];
  for (int c = 0; c < 3; ++c) {
    top[c] = 40 + 200 * unit(rng);
    bottom[c] = 20 + 200 * unit(rng);
  }

  std::vector<double> px(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    const double t = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        px[(static_cast<std::size_t>(y) * width + x) * 3 + c] = top[c] * (1 - t) + bottom[c] * t;
      }
    }
  }

  const int shapes = 3 + static_cast<int>(rng() % 4);
  for (int s = 0; s < shapes; ++s) {
    const double cx = unit(rng) * width;
    const double cy = unit(rng) * height;
    const double rx = (0.1 + 0.3 * unit(rng)) * width;
    const double ry = (0.1 + 0.3 * unit(rng)) * height;
    const bool ellipse = (rng() & 1u) != 0;
    double colour[3];
    for (double& v : colour) v = 255 * unit(rng);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double dx = (x - cx) / rx;
        const double dy = (y - cy) / ry;
        const bool inside = ellipse ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 0.6;
        if (!inside) continue;
        const double shade = 0.8 + 0.2 * (1.0 - std::min(1.0, std::abs(dy)));
        for (int c = 0; c < 3; ++c) px[(static_cast<std::size_t>(y) * width + x) * 3 + c] = colour[c] * shade;
      }
    }
  }

  const double fx = 2 + 6 * unit(rng);
  const double fy = 2 + 6 * unit(rng);
  const double amp = 10 + 15 * unit(rng);
  RgbImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double tex = amp * std::sin(fx * 6.283185307179586 * x / width) * std::cos(fy * 6.283185307179586 * y / height);
      const double grain = 6.0 * (unit(rng) - 0.5);
      const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
      img.at(x, y) = {clamp_channel(px[i] + tex + grain), clamp_channel(px[i + 1] + tex + grain),
                      clamp_channel(px[i + 2] + tex + grain)};
    }
  }
  return img;
}

std::vector<RgbImage> scene_set(std::uint64_t first, std::size_t count, int width, int height) {
  std::vector<RgbImage> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(scene(first + i, width, height));
  return out;
}

std::filesystem::path temp_dir(const std::string& name) {
  // ctest -j runs each case in its own process, so the pid keeps them apart.
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const std::string test = info ? std::string(info->test_suite_name()) + "." + info->name() : "none";
  const auto dir = std::filesystem::temp_directory_path() /
                   ("scmix_test_" + name + "_" + std::to_string(::getpid()) + "_" + test);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

eval::DatasetManifest scene_dataset(const std::filesystem::path& dir, const std::vector<std::string>& labels,
                                    int width, int height, std::uint64_t first_scene) {
  eval::DatasetManifest m;
  m.dataset_name = "scenes";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    eval::ManifestEntry e;
    e.image_id = "s" + std::to_string(i);
    e.path = dir / (e.image_id + ".png");
    e.label = labels[i];
    e.prompt = "Which animal is this? [" + e.image_id + "]";
    write_png(e.path, scene(first_scene + i, width, height));
    m.entries.push_back(std::move(e));
  }
  return m;
}

std::string prompt_image_id(const std::string& prompt) {
  const auto close = prompt.rfind(']');
  const auto open = prompt.rfind('[', close);
  if (close == std::string::npos || open == std::string::npos) return {};
  return prompt.substr(open + 1, close - open - 1);
}

std::filesystem::path data_dir() { return SCMIX_TEST_DATA_DIR; }

}  // namespace scmix::testing
