#include "scmix/eval/aggregate.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

#include "scmix/util.hpp"

namespace scmix::eval {
namespace {

using GroupKey = std::tuple<std::string, std::string, std::string, int, std::string>;

}  // namespace

AccuracyTable aggregate(const std::vector<ResultRow>& rows) {
  std::unordered_map<std::string, std::size_t> latest;
  for (std::size_t i = 0; i < rows.size(); ++i) latest[rows[i].key()] = i;

  struct Group {
    std::vector<const ResultRow*> rows;
  };
  std::map<GroupKey, Group> groups;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    if (latest.at(r.key()) != i) continue;
    groups[{r.dataset_name, r.model_name, r.variant, r.degree, r.preprocess}].rows.push_back(&r);
  }

  AccuracyTable table;
  for (const auto& [key, group] : groups) {
    AccuracyRow out;
    std::tie(out.dataset_name, out.model_name, out.variant, out.degree, out.preprocess) = key;
    std::map<std::string, std::pair<int, int>> per_image;  // image -> (answered, correct) for MME
    for (const ResultRow* r : group.rows) {
      if (r->task == TaskKind::MmePair) out.mme = true;
      if (r->failed) {
        ++out.failed;
        continue;
      }
      ++out.answered;
      if (r->correct) ++out.correct;
      if (r->task == TaskKind::MmePair) {
        auto& [answered, correct] = per_image[r->image_id];
        ++answered;
        if (r->correct) ++correct;
      }
    }
    if (out.answered > 0) out.accuracy = static_cast<double>(out.correct) / out.answered;
    if (out.mme) {
      out.acc = out.accuracy.value_or(0.0);
      int both = 0;
      for (const auto& [image, counts] : per_image) {
        if (counts.first != 2) continue;
        ++out.mme_images;
        if (counts.second == 2) ++both;
      }
      out.acc_plus = out.mme_images ? static_cast<double>(both) / out.mme_images : 0.0;
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

AccuracyTable aggregate(const std::filesystem::path& results_path) {
  ResultsFile file = read_results(results_path);
  AccuracyTable table = aggregate(file.rows);
  table.malformed_lines = std::move(file.malformed_lines);
  return table;
}

void write_accuracy_csv(std::ostream& out, const AccuracyTable& table) {
  out << "dataset,model,variant,degree,preprocess,answered,correct,failed,accuracy,acc,acc_plus,mme_score\n";
  for (const auto& r : table.rows) {
    out << csv_field(r.dataset_name) << ',' << csv_field(r.model_name) << ',' << csv_field(r.variant) << ','
        << r.degree << ',' << csv_field(r.preprocess) << ',' << r.answered << ',' << r.correct << ',' << r.failed
        << ',' << (r.accuracy ? format_double(*r.accuracy) : std::string());
    if (r.mme) {
      out << ',' << format_double(r.acc) << ',' << format_double(r.acc_plus) << ',' << format_double(r.mme_score());
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

}  // namespace scmix::eval
