#include "obqa/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace obqa {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", round2(v));
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view to_string(QuerySetting s) {
  switch (s) {
    case QuerySetting::prompt:
      return "prompt";
    case QuerySetting::sft_vanilla:
      return "sft-vanilla";
    case QuerySetting::sft_correct_trace:
      return "sft-correct-trace";
    case QuerySetting::sft_incorrect_trace:
      return "sft-incorrect-trace";
  }
  return "";
}

QuerySetting query_setting_from(std::string_view name) {
  if (name == "prompt") return QuerySetting::prompt;
  if (name == "sft-vanilla") return QuerySetting::sft_vanilla;
  if (name == "sft-correct-trace") return QuerySetting::sft_correct_trace;
  if (name == "sft-incorrect-trace") return QuerySetting::sft_incorrect_trace;
  throw Error("unknown query setting '" + std::string(name) +
              "' (expected prompt|sft-vanilla|sft-correct-trace|sft-incorrect-trace)");
}

bool setting_has_trace(QuerySetting s) {
  return s == QuerySetting::sft_correct_trace || s == QuerySetting::sft_incorrect_trace;
}

MetricsRow summarize(const std::string& model, QuerySetting setting, const EvalSummary& sum) {
  if (sum.records.empty()) {
    throw Error("no evaluation records for model '" + model + "' setting '" +
                std::string(to_string(setting)) + "'");
  }
  MetricsRow row;
  row.model = model;
  row.setting = setting;
  row.count = sum.records.size();
  row.em = 100.0 * sum.em_rate;
  row.f1 = 100.0 * sum.f1_mean;
  row.precision = 100.0 * sum.precision_mean;
  row.recall = 100.0 * sum.recall_mean;
  if (setting_has_trace(setting)) {
    row.classification = 100.0 * sum.classification_rate;
    row.ir = 100.0 * sum.ir_rate;
    row.trace = 100.0 * sum.trace_rate;
  }
  row.trace_len_words = sum.trace_len_words_mean;
  return row;
}

namespace {

Json row_to_json(const MetricsRow& r) {
  Json j;
  j["model"] = r.model;
  j["query_setting"] = std::string(to_string(r.setting));
  j["count"] = r.count;
  j["em"] = r.em;
  j["f1"] = r.f1;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["classification"] = r.classification ? Json(*r.classification) : Json(nullptr);
  j["ir"] = r.ir ? Json(*r.ir) : Json(nullptr);
  j["trace"] = r.trace ? Json(*r.trace) : Json(nullptr);
  j["trace_len_words"] = r.trace_len_words;
  return j;
}

Json confusion_to_json(const ConfusionEntry& e) {
  const Confusion& c = e.confusion;
  Json j;
  j["model"] = e.model;
  j["query_setting"] = std::string(to_string(e.setting));
  j["total"] = c.total();
  j["counts"] = Json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
  j["percent"] = Json{{"tp", pct(c.tp, c.total())},
                      {"fp", pct(c.fp, c.total())},
                      {"fn", pct(c.fn, c.total())},
                      {"tn", pct(c.tn, c.total())}};
  j["grid"] = Json{{"rows", "trace"},
                   {"cols", "solution"},
                   {"cells", Json::array({Json::array({"tp", "fn"}), Json::array({"fp", "tn"})})}};
  return j;
}

}  // namespace

std::string emit_json(const ReportBundle& bundle) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& r : bundle.rows) j["rows"].push_back(row_to_json(r));
  j["confusions"] = Json::array();
  for (const auto& e : bundle.confusions) j["confusions"].push_back(confusion_to_json(e));
  return j.dump(2) + "\n";
}

std::string emit_csv(const ReportBundle& bundle) {
  std::string out =
      "model,query_setting,count,em,f1,precision,recall,classification,ir,trace,"
      "trace_len_words\n";
  for (const auto& r : bundle.rows) {
    out += csv_escape(r.model);
    out += ',';
    out += to_string(r.setting);
    out += ',';
    out += std::to_string(r.count);
    for (const double v : {r.em, r.f1, r.precision, r.recall}) {
      out += ',';
      out += fmt2(v);
    }
    for (const auto& v : {r.classification, r.ir, r.trace}) {
      out += ',';
      if (v) out += fmt2(*v);
    }
    out += ',';
    out += fmt2(r.trace_len_words);
    out += '\n';
  }
  return out;
}

std::string emit_markdown(const ReportBundle& bundle) {
  std::string out =
      "| Model | Query setting | EM | F1 | Precision | Recall | Classification | IR | Trace | "
      "Trace len |\n"
      "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : bundle.rows) {
    out += "| " + r.model + " | " + std::string(to_string(r.setting));
    for (const double v : {r.em, r.f1, r.precision, r.recall}) {
      out += " | " + fmt2(v);
    }
    for (const auto& v : {r.classification, r.ir, r.trace}) {
      out += " | ";
      out += v ? fmt2(*v) : "-";
    }
    out += " | " + fmt2(r.trace_len_words) + " |\n";
  }
  return out;
}

std::string emit_confusion_json(const ConfusionEntry& entry) {
  return confusion_to_json(entry).dump(2) + "\n";
}

void write_report_files(const ReportBundle& bundle, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

  std::map<std::string, std::string> confusion_owner;  // filename -> model
  for (const auto& e : bundle.confusions) {
    const std::string name = "confusion." + std::string(to_string(e.setting)) + ".json";
    const auto [it, inserted] = confusion_owner.emplace(name, e.model);
    if (!inserted) {
      throw Error("both '" + it->second + "' and '" + e.model + "' would write " + name +
                  "; report them into separate output directories");
    }
  }

  const auto write_file = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("short write to '" + path.string() + "'");
  };

  write_file("report.json", emit_json(bundle));
  write_file("report.csv", emit_csv(bundle));
  write_file("report.md", emit_markdown(bundle));
  for (const auto& e : bundle.confusions) {
    write_file("confusion." + std::string(to_string(e.setting)) + ".json",
               emit_confusion_json(e));
  }
}

}  // namespace obqa
