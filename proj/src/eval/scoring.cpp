#include "scmix/eval/scoring.hpp"

#include <cctype>

namespace scmix::eval {
namespace {

// Non-ASCII bytes count as word characters so accented letters are not boundaries.
bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

}  // namespace

std::string normalize_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (const char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool score_exact_match(std::string_view response, std::string_view label) {
  const std::string needle = normalize_text(label);
  if (needle.empty()) return false;
  const std::string hay = normalize_text(response);
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]) || !is_word_char(needle.front());
    const std::size_t end = pos + needle.size();
    const bool right_ok = end == hay.size() || !is_word_char(hay[end]) || !is_word_char(needle.back());
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::optional<bool> parse_yes_no(std::string_view response) {
  std::size_t i = 0;
  while (i < response.size()) {
    while (i < response.size() && !is_word_char(response[i])) ++i;
    const std::size_t start = i;
    while (i < response.size() && is_word_char(response[i])) ++i;
    if (i == start) break;
    std::string token;
    for (std::size_t k = start; k < i; ++k) token += static_cast<char>(std::tolower(static_cast<unsigned char>(response[k])));
    if (token == "yes") return true;
    if (token == "no") return false;
  }
  return std::nullopt;
}

MmeImageScore score_mme(std::span<const MmeAnswer, 2> answers) {
  MmeImageScore s;
  for (std::size_t q = 0; q < 2; ++q) {
    const auto verdict = parse_yes_no(answers[q].response);
    s.correct[q] = verdict.has_value() && *verdict == (answers[q].gold == "yes");
  }
  s.both_correct = s.correct[0] && s.correct[1];
  return s;
}

void MmeTally::add(const MmeImageScore& s) {
  questions += 2;
  correct_questions += static_cast<int>(s.correct[0]) + static_cast<int>(s.correct[1]);
  images += 1;
  both_correct_images += static_cast<int>(s.both_correct);
}

}  // namespace scmix::eval
