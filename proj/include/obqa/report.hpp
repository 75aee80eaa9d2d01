#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obqa/parse_eval.hpp"

namespace obqa {

enum class QuerySetting { prompt, sft_vanilla, sft_correct_trace, sft_incorrect_trace };

std::string_view to_string(QuerySetting s);
QuerySetting query_setting_from(std::string_view name);  // throws Error
bool setting_has_trace(QuerySetting s);

// One table row; metric values are percentages (full precision), except
// trace_len_words which is a plain mean. Trace columns are absent for
// settings whose completions carry no trace.
struct MetricsRow {
  std::string model;
  QuerySetting setting = QuerySetting::prompt;
  std::size_t count = 0;
  double em = 0.0, f1 = 0.0, precision = 0.0, recall = 0.0;
  std::optional<double> classification, ir, trace;
  double trace_len_words = 0.0;
};

MetricsRow summarize(const std::string& model, QuerySetting setting, const EvalSummary& sum);

struct ConfusionEntry {
  std::string model;
  QuerySetting setting = QuerySetting::sft_correct_trace;
  Confusion confusion;
};

struct ReportBundle {
  std::vector<MetricsRow> rows;
  std::vector<ConfusionEntry> confusions;
};

// Full-precision document with rows + confusions.
std::string emit_json(const ReportBundle& bundle);
// 2-decimal values; trace blanks empty.
std::string emit_csv(const ReportBundle& bundle);
// 2-decimal values; trace blanks "-".
std::string emit_markdown(const ReportBundle& bundle);
// 2x2 grid document: rows = trace correctness, cols = solution correctness.
std::string emit_confusion_json(const ConfusionEntry& entry);

// Writes report.json/report.csv/report.md and one confusion.<setting>.json
// per trace-bearing entry into out_dir. Throws if two entries would collide
// on the same confusion file.
void write_report_files(const ReportBundle& bundle, const std::string& out_dir);

}  // namespace obqa
