#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace scmix::eval {

/// Lowercases ASCII and collapses whitespace runs to one space, trimming both ends.
std::string normalize_text(std::string_view s);

/// True iff `label` occurs in `response` as a whole-word phrase, ignoring case
/// and whitespace differences.
bool score_exact_match(std::string_view response, std::string_view label);

/// First standalone "yes"/"no" token, case-insensitive.
std::optional<bool> parse_yes_no(std::string_view response);

struct MmeAnswer {
  std::string_view response;
  std::string_view gold;  // "yes" or "no"
};

struct MmeImageScore {
  std::array<bool, 2> correct{};
  bool both_correct = false;
};

MmeImageScore score_mme(std::span<const MmeAnswer, 2> answers);

/// Running acc / acc+ totals over images.
struct MmeTally {
  int questions = 0;
  int correct_questions = 0;
  int images = 0;
  int both_correct_images = 0;

  void add(const MmeImageScore& s);
  double acc() const { return questions ? static_cast<double>(correct_questions) / questions : 0.0; }
  double acc_plus() const { return images ? static_cast<double>(both_correct_images) / images : 0.0; }
  double score() const { return 100.0 * acc() + 100.0 * acc_plus(); }
};

}  // namespace scmix::eval
