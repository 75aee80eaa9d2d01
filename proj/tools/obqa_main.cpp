// obqa: build SFT datasets with correct or deliberately corrupted reasoning
// traces from open-book QA corpora, collect model completions, and score
// answers and traces.
//
// Pipeline: ingest -> decompose -> build-sft -> infer -> eval -> report.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "obqa/corpus.hpp"
#include "obqa/decompose.hpp"
#include "obqa/infer_client.hpp"
#include "obqa/parse_eval.hpp"
#include "obqa/report.hpp"
#include "obqa/trace.hpp"
#include "obqa/version.hpp"

namespace {

using namespace obqa;

// sysexits-style process exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 64;
constexpr int kData = 65;
constexpr int kNoInput = 66;
constexpr int kUnavailable = 69;
constexpr int kSoftware = 70;
constexpr int kIo = 74;

struct UsageError : Error {
  using Error::Error;
};
struct NoInputError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("short write to '" + path + "'");
}

std::vector<QAInstance> load_corpus(const std::string& path, const DatasetKind& kind,
                                    bool lenient, std::size_t* skipped = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInputError("cannot open input file '" + path + "'");
  LoadResult loaded = load_jsonl(in, kind, /*strict=*/!lenient);
  if (skipped) *skipped = loaded.skipped.size();
  return std::move(loaded.instances);
}

TraceTemplate template_for(const DatasetKind& kind, const std::string& override_name) {
  if (override_name == "cotemp") return TraceTemplate::cotemp_default();
  if (override_name == "generic") return TraceTemplate::generic_default();
  if (!override_name.empty()) {
    throw UsageError("unknown template '" + override_name + "' (expected cotemp|generic)");
  }
  return kind.family() == DatasetFamily::cotemp ? TraceTemplate::cotemp_default()
                                                : TraceTemplate::generic_default();
}

// Manifest written next to every output. Deliberately timestamp-free so that
// identical invocations produce byte-identical files.
void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const std::map<std::string, std::string>& options) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  Json opts = Json::object();
  for (const auto& [key, value] : options) opts[key] = value;
  j["options"] = std::move(opts);
  j["options_digest"] = sha256_hex(j["options"].dump());
  const std::string path = out_path + ".manifest.json";
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  finish_output(out, path);
}

void emit_status(const Json& j) { std::cout << j.dump() << '\n'; }

// --- ingest ----------------------------------------------------------------

struct IngestOpts {
  std::string kind, task, in, out;
  bool lenient = false;
};

void run_ingest(const IngestOpts& o) {
  std::vector<QAInstance> instances;
  std::size_t skipped = 0;
  if (o.kind == "babi") {
    if (o.task.empty()) throw UsageError("--task is required for --kind babi");
    instances = parse_babi(read_file(o.in), o.task);
  } else {
    const DatasetKind kind = DatasetKind::parse(o.kind);
    instances = load_corpus(o.in, kind, o.lenient, &skipped);
  }
  std::ofstream out = open_output(o.out);
  serialize(instances, out);
  finish_output(out, o.out);
  write_manifest(o.out, "ingest",
                 {{"kind", o.kind},
                  {"task", o.task},
                  {"in", o.in},
                  {"out", o.out},
                  {"lenient", o.lenient ? "true" : "false"}});
  emit_status(Json{{"instances", instances.size()}, {"skipped", skipped}});
}

// --- decompose -------------------------------------------------------------

struct DecomposeOpts {
  std::string kind, in, out;
  bool cross_check = false;
  bool with_oracle = false;
};

void run_decompose(const DecomposeOpts& o) {
  const DatasetKind kind = DatasetKind::parse(o.kind);
  const std::vector<QAInstance> instances = load_corpus(o.in, kind, /*lenient=*/false);

  std::ofstream out = open_output(o.out);
  std::size_t cross_agree = 0, oracle_ok = 0;
  for (const QAInstance& inst : instances) {
    CrossCheck cc;
    const TraceSkeleton sk = decompose(inst, o.cross_check ? &cc : nullptr);
    Json j;
    j["id"] = inst.id;
    j["category"] = sk.category;
    j["support"] = sk.support;
    if (o.cross_check && cc.ran) {
      Json rels = Json::array();
      for (const auto& [idx, label] : cc.support_relations) {
        rels.push_back(Json{{"fact", idx}, {"relation", label}});
      }
      j["cross_check"] = Json{{"agrees", cc.agrees},
                              {"recomputed", cc.recomputed},
                              {"anchor", cc.anchor_index ? Json(*cc.anchor_index) : Json(nullptr)},
                              {"relations", std::move(rels)},
                              {"note", cc.note}};
      if (cc.agrees) ++cross_agree;
    }
    if (o.with_oracle) {
      try {
        j["oracle_answers"] = solve_oracle(inst);
        ++oracle_ok;
      } catch (const Error& e) {
        j["oracle_error"] = std::string(e.what());
      }
    }
    out << j.dump() << '\n';
  }
  finish_output(out, o.out);
  write_manifest(o.out, "decompose",
                 {{"kind", o.kind},
                  {"in", o.in},
                  {"out", o.out},
                  {"cross-check", o.cross_check ? "true" : "false"},
                  {"with-oracle", o.with_oracle ? "true" : "false"}});
  Json status{{"instances", instances.size()}};
  if (o.cross_check) status["cross_agree"] = cross_agree;
  if (o.with_oracle) status["oracle_ok"] = oracle_ok;
  emit_status(status);
}

// --- build-sft -------------------------------------------------------------

struct BuildSftOpts {
  std::string kind, in, out, mode = "correct_trace", template_name, corrupt = "both";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void run_build_sft(const BuildSftOpts& o) {
  const DatasetKind kind = DatasetKind::parse(o.kind);
  const SftMode mode = sft_mode_from(o.mode);
  const TraceTemplate tpl = template_for(kind, o.template_name);

  CorruptionPolicy policy;
  const CorruptionPolicy* policy_ptr = nullptr;
  if (mode == SftMode::incorrect_trace) {
    if (!o.seed_given) throw UsageError("--seed is required for --mode incorrect_trace");
    policy.seed = o.seed;
    if (o.corrupt == "both") {
      policy.corrupt_category = policy.corrupt_facts = true;
    } else if (o.corrupt == "category") {
      policy.corrupt_category = true;
      policy.corrupt_facts = false;
    } else if (o.corrupt == "facts") {
      policy.corrupt_category = false;
      policy.corrupt_facts = true;
    } else {
      throw UsageError("unknown --corrupt '" + o.corrupt + "' (expected both|category|facts)");
    }
    policy_ptr = &policy;
  }

  const std::vector<QAInstance> instances = load_corpus(o.in, kind, /*lenient=*/false);
  std::ofstream out = open_output(o.out);
  export_sft(instances, mode, tpl, policy_ptr, out);
  finish_output(out, o.out);

  std::map<std::string, std::string> opts{{"kind", o.kind},
                                          {"in", o.in},
                                          {"out", o.out},
                                          {"mode", o.mode},
                                          {"template", o.template_name},
                                          {"corrupt", o.corrupt}};
  if (o.seed_given) opts["seed"] = std::to_string(o.seed);
  write_manifest(o.out, "build-sft", opts);
  emit_status(Json{{"records", instances.size()}, {"mode", o.mode}});
}

// --- infer -----------------------------------------------------------------

struct InferOpts {
  std::string in, out, base_url, model, cache_dir, api_key;
  double temperature = 0.0;
  int max_new_tokens = 512;
  double timeout_s = 30.0;
  int max_in_flight = 4;
  int max_retries = 3;
  int backoff_ms = 250;
};

std::vector<InferRequest> read_prompts(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInputError("cannot open input file '" + path + "'");
  std::vector<InferRequest> requests;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(lineno, "invalid JSON object");
    const auto id = j.find("id");
    const auto prompt = j.find("prompt");
    if (id == j.end() || !id->is_string()) {
      throw ParseError(lineno, "missing string field 'id'");
    }
    if (prompt == j.end() || !prompt->is_string()) {
      throw ParseError(lineno, "missing string field 'prompt'");
    }
    requests.push_back({id->get<std::string>(), prompt->get<std::string>()});
  }
  return requests;
}

void run_infer(const InferOpts& o) {
  EndpointConfig cfg;
  cfg.base_url = o.base_url;
  cfg.model_name = o.model;
  cfg.api_key = o.api_key;
  cfg.temperature = o.temperature;
  cfg.max_new_tokens = o.max_new_tokens;
  cfg.request_timeout_s = o.timeout_s;
  cfg.max_in_flight = o.max_in_flight;
  cfg.max_retries = o.max_retries;
  cfg.backoff_base_ms = o.backoff_ms;

  const std::vector<InferRequest> requests = read_prompts(o.in);
  InferClient client(cfg, o.cache_dir);
  CollectStats stats;
  const std::vector<InferResult> results = client.collect(requests, &stats);

  std::ofstream out = open_output(o.out);
  std::vector<std::string> failure_lines;
  for (const InferResult& r : results) {
    Json j;
    j["id"] = r.id;
    if (r.ok) {
      j["completion"] = r.completion;
      j["attempts"] = r.attempts;
      j["from_cache"] = r.from_cache;
    } else {
      j["error"] = r.error;
      j["attempts"] = r.attempts;
      failure_lines.push_back(j.dump());
    }
    out << j.dump() << '\n';
  }
  finish_output(out, o.out);
  if (!failure_lines.empty()) {
    // Failures are data: a side file makes resuming just "rerun on this file".
    const std::string failures_path = o.out + ".failures.jsonl";
    std::ofstream fail_out = open_output(failures_path);
    for (const std::string& line : failure_lines) fail_out << line << '\n';
    finish_output(fail_out, failures_path);
  }

  write_manifest(o.out, "infer",
                 {{"in", o.in},
                  {"out", o.out},
                  {"base-url", o.base_url},
                  {"model", o.model},
                  {"cache-dir", o.cache_dir},
                  {"temperature", std::to_string(o.temperature)},
                  {"max-new-tokens", std::to_string(o.max_new_tokens)},
                  {"timeout", std::to_string(o.timeout_s)},
                  {"max-in-flight", std::to_string(o.max_in_flight)},
                  {"max-retries", std::to_string(o.max_retries)},
                  {"backoff-ms", std::to_string(o.backoff_ms)}});
  emit_status(Json{{"requests", requests.size()},
                   {"cache_hits", stats.cache_hits},
                   {"network_calls", stats.network_calls},
                   {"failures", stats.failures}});
}

// --- eval ------------------------------------------------------------------

struct EvalOpts {
  std::string corpus, kind, completions, out, model = "model";
  std::string setting = "sft-correct-trace", template_name;
  bool allow_missing = false;
};

std::vector<ModelOutput> read_completions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInputError("cannot open input file '" + path + "'");
  std::vector<ModelOutput> outputs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(lineno, "invalid JSON object");
    const auto id = j.find("id");
    if (id == j.end() || !id->is_string()) {
      throw ParseError(lineno, "missing string field 'id'");
    }
    const auto completion = j.find("completion");
    if (completion == j.end()) continue;  // failed inference rows carry no completion
    if (!completion->is_string()) throw ParseError(lineno, "field 'completion' must be a string");
    outputs.push_back({id->get<std::string>(), completion->get<std::string>()});
  }
  return outputs;
}

Json flags_to_json(const ParseFlags& f) {
  return Json{{"missing_think", f.missing_think},
              {"missing_answer", f.missing_answer},
              {"category_unparsed", f.category_unparsed},
              {"facts_unparsed", f.facts_unparsed}};
}

Json confusion_to_json(const Confusion& c) {
  return Json{{"tp", c.tp},
              {"fp", c.fp},
              {"fn", c.fn},
              {"tn", c.tn},
              {"total", c.total()},
              {"percent",
               Json{{"tp", pct(c.tp, c.total())},
                    {"fp", pct(c.fp, c.total())},
                    {"fn", pct(c.fn, c.total())},
                    {"tn", pct(c.tn, c.total())}}}};
}

void run_eval(const EvalOpts& o) {
  const DatasetKind kind = DatasetKind::parse(o.kind);
  const QuerySetting setting = query_setting_from(o.setting);
  const TraceTemplate tpl = template_for(kind, o.template_name);

  const std::vector<QAInstance> instances = load_corpus(o.corpus, kind, /*lenient=*/false);
  const std::vector<ModelOutput> outputs = read_completions(o.completions);

  EvalOptions opts;
  opts.expect_trace = setting_has_trace(setting);
  opts.allow_missing = o.allow_missing;
  const EvalSummary sum = evaluate(instances, outputs, tpl, opts);

  Json doc;
  doc["model"] = o.model;
  doc["query_setting"] = o.setting;
  doc["count"] = sum.records.size();
  doc["missing"] = sum.missing;
  Json metrics;
  metrics["em"] = sum.em_rate;
  metrics["f1"] = sum.f1_mean;
  metrics["precision"] = sum.precision_mean;
  metrics["recall"] = sum.recall_mean;
  metrics["classification"] = opts.expect_trace ? Json(sum.classification_rate) : Json(nullptr);
  metrics["ir"] = opts.expect_trace ? Json(sum.ir_rate) : Json(nullptr);
  metrics["trace"] = opts.expect_trace ? Json(sum.trace_rate) : Json(nullptr);
  metrics["trace_len_words"] = sum.trace_len_words_mean;
  metrics["trace_len_tokens"] = sum.trace_len_tokens_mean;
  metrics["per_answer_recall"] = sum.per_answer_recall_mean;
  metrics["ir_overlap"] = sum.ir_overlap_mean;
  doc["metrics"] = std::move(metrics);
  doc["confusion"] = opts.expect_trace ? confusion_to_json(sum.confusion) : Json(nullptr);
  Json records = Json::array();
  for (const RecordEval& r : sum.records) {
    Json j;
    j["id"] = r.id;
    j["em"] = r.answer.em;
    j["f1"] = r.answer.f1;
    j["precision"] = r.answer.precision;
    j["recall"] = r.answer.recall;
    j["classification"] = r.trace.classification_correct;
    j["ir"] = r.trace.ir_correct;
    j["trace"] = r.trace.trace_correct;
    j["flags"] = flags_to_json(r.flags);
    j["trace_len_words"] = r.trace_len_words;
    j["trace_len_tokens"] = r.trace_len_tokens;
    j["per_answer_recall"] = r.per_answer_recall;
    j["ir_overlap"] = r.ir_overlap;
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);

  std::ofstream out = open_output(o.out);
  out << doc.dump(2) << '\n';
  finish_output(out, o.out);

  write_manifest(o.out, "eval",
                 {{"corpus", o.corpus},
                  {"kind", o.kind},
                  {"completions", o.completions},
                  {"out", o.out},
                  {"model", o.model},
                  {"setting", o.setting},
                  {"template", o.template_name},
                  {"allow-missing", o.allow_missing ? "true" : "false"}});
  emit_status(Json{{"count", sum.records.size()},
                   {"missing", sum.missing},
                   {"em", sum.em_rate},
                   {"f1", sum.f1_mean}});
}

// --- report ----------------------------------------------------------------

struct ReportOpts {
  std::vector<std::string> inputs;
  std::string out_dir;
};

double num_or_throw(const Json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw Error("eval document '" + path + "' lacks numeric metric '" + key + "'");
  }
  return it->get<double>();
}

void run_report(const ReportOpts& o) {
  ReportBundle bundle;
  for (const std::string& path : o.inputs) {
    const Json doc = Json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw Error("eval document '" + path + "' is not a JSON object");
    }
    MetricsRow row;
    row.model = doc.value("model", std::string("model"));
    row.setting = query_setting_from(doc.value("query_setting", std::string("prompt")));
    row.count = doc.value("count", std::size_t{0});
    if (row.count == 0) throw Error("eval document '" + path + "' has no records");
    const auto metrics_it = doc.find("metrics");
    if (metrics_it == doc.end() || !metrics_it->is_object()) {
      throw Error("eval document '" + path + "' lacks 'metrics'");
    }
    const Json& m = *metrics_it;
    row.em = 100.0 * num_or_throw(m, "em", path);
    row.f1 = 100.0 * num_or_throw(m, "f1", path);
    row.precision = 100.0 * num_or_throw(m, "precision", path);
    row.recall = 100.0 * num_or_throw(m, "recall", path);
    row.trace_len_words = num_or_throw(m, "trace_len_words", path);
    if (setting_has_trace(row.setting)) {
      row.classification = 100.0 * num_or_throw(m, "classification", path);
      row.ir = 100.0 * num_or_throw(m, "ir", path);
      row.trace = 100.0 * num_or_throw(m, "trace", path);
    }
    bundle.rows.push_back(row);

    const auto confusion_it = doc.find("confusion");
    if (confusion_it != doc.end() && confusion_it->is_object()) {
      ConfusionEntry entry;
      entry.model = row.model;
      entry.setting = row.setting;
      entry.confusion.tp = confusion_it->value("tp", std::size_t{0});
      entry.confusion.fp = confusion_it->value("fp", std::size_t{0});
      entry.confusion.fn = confusion_it->value("fn", std::size_t{0});
      entry.confusion.tn = confusion_it->value("tn", std::size_t{0});
      bundle.confusions.push_back(std::move(entry));
    }
  }

  write_report_files(bundle, o.out_dir);
  std::map<std::string, std::string> opts{{"out-dir", o.out_dir}};
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    opts["in." + std::to_string(i)] = o.inputs[i];
  }
  write_manifest((std::filesystem::path(o.out_dir) / "report").string(), "report", opts);
  emit_status(Json{{"rows", bundle.rows.size()},
                   {"confusions", bundle.confusions.size()},
                   {"out_dir", o.out_dir}});
}

// --- oracle-check ----------------------------------------------------------

struct OracleCheckOpts {
  std::string in, kind;
  std::size_t limit = 0;
};

int run_oracle_check(const OracleCheckOpts& o) {
  const DatasetKind kind = DatasetKind::parse(o.kind);
  std::vector<QAInstance> instances = load_corpus(o.in, kind, /*lenient=*/false);
  if (o.limit > 0 && instances.size() > o.limit) instances.resize(o.limit);

  std::size_t agree = 0, errors = 0, cross_agree = 0;
  for (const QAInstance& inst : instances) {
    CrossCheck cc;
    decompose(inst, &cc);
    if (!cc.ran || cc.agrees) ++cross_agree;
    try {
      std::vector<std::string> derived = solve_oracle(inst);
      std::vector<std::string> gold = inst.gold_answers;
      std::sort(derived.begin(), derived.end());
      std::sort(gold.begin(), gold.end());
      if (derived == gold) ++agree;
    } catch (const Error&) {
      ++errors;
    }
  }
  emit_status(Json{{"instances", instances.size()},
                   {"oracle_agree", agree},
                   {"oracle_errors", errors},
                   {"cross_agree", cross_agree}});
  return agree == instances.size() ? kOk : kData;
}

Json error_json(const std::string& message, int code) {
  return Json{{"error", message}, {"exit", code}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-book QA trace construction and evaluation toolkit"};
  app.set_config("--config", "", "Read options from a key=value config file");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  IngestOpts ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a raw dataset into canonical JSONL");
  ingest_cmd->add_option("--kind", ingest.kind, "Dataset kind: cotemp|marco|babi")->required();
  ingest_cmd->add_option("--task", ingest.task, "bAbI task label (babi only)");
  ingest_cmd->add_option("--in", ingest.in, "Input file")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output JSONL")->required();
  ingest_cmd->add_flag("--lenient", ingest.lenient, "Skip bad records instead of failing");

  DecomposeOpts decompose_o;
  auto* decompose_cmd =
      app.add_subcommand("decompose", "Derive reasoning-step skeletons from gold labels");
  decompose_cmd->add_option("--kind", decompose_o.kind, "Dataset kind")->required();
  decompose_cmd->add_option("--in", decompose_o.in, "Corpus JSONL")->required();
  decompose_cmd->add_option("--out", decompose_o.out, "Skeleton JSONL")->required();
  decompose_cmd->add_flag("--cross-check", decompose_o.cross_check,
                          "Recompute temporal relations from raw text and report agreement");
  decompose_cmd->add_flag("--with-oracle", decompose_o.with_oracle,
                          "Also derive answers with the rule-based solver");

  BuildSftOpts build;
  auto* build_cmd = app.add_subcommand("build-sft", "Render SFT prompt/completion records");
  build_cmd->add_option("--kind", build.kind, "Dataset kind")->required();
  build_cmd->add_option("--in", build.in, "Corpus JSONL")->required();
  build_cmd->add_option("--out", build.out, "SFT JSONL")->required();
  build_cmd->add_option("--mode", build.mode, "vanilla|correct_trace|incorrect_trace");
  build_cmd->add_option("--template", build.template_name, "Trace template: cotemp|generic");
  build_cmd->add_option("--corrupt", build.corrupt, "What to corrupt: both|category|facts");
  auto* seed_opt = build_cmd->add_option("--seed", build.seed, "Corruption seed");

  InferOpts infer;
  auto* infer_cmd = app.add_subcommand("infer", "Collect completions from a chat endpoint");
  infer_cmd->add_option("--in", infer.in, "SFT JSONL with id+prompt")->required();
  infer_cmd->add_option("--out", infer.out, "Completions JSONL")->required();
  infer_cmd->add_option("--base-url", infer.base_url, "Endpoint scheme://host[:port]")
      ->required();
  infer_cmd->add_option("--model", infer.model, "Model name")->required();
  infer_cmd->add_option("--cache-dir", infer.cache_dir, "Response cache directory");
  infer_cmd->add_option("--api-key", infer.api_key,
                        "API key (default: $OBQA_API_KEY, then $OPENAI_API_KEY)");
  infer_cmd->add_option("--temperature", infer.temperature, "Sampling temperature");
  infer_cmd->add_option("--max-new-tokens", infer.max_new_tokens, "Completion token cap");
  infer_cmd->add_option("--timeout", infer.timeout_s, "Per-request timeout, seconds");
  infer_cmd->add_option("--max-in-flight", infer.max_in_flight, "Concurrent request cap");
  infer_cmd->add_option("--max-retries", infer.max_retries, "Retries after the first attempt");
  infer_cmd->add_option("--backoff-ms", infer.backoff_ms, "Base retry backoff");

  EvalOpts eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score completions against a corpus");
  eval_cmd->add_option("--corpus", eval.corpus, "Corpus JSONL")->required();
  eval_cmd->add_option("--kind", eval.kind, "Dataset kind")->required();
  eval_cmd->add_option("--completions", eval.completions, "Completions JSONL")->required();
  eval_cmd->add_option("--out", eval.out, "Evaluation JSON document")->required();
  eval_cmd->add_option("--model", eval.model, "Model label for reports");
  eval_cmd->add_option("--setting", eval.setting,
                       "prompt|sft-vanilla|sft-correct-trace|sft-incorrect-trace");
  eval_cmd->add_option("--template", eval.template_name, "Trace template: cotemp|generic");
  eval_cmd->add_flag("--allow-missing", eval.allow_missing,
                     "Score instances without completions as empty output");

  ReportOpts report;
  auto* report_cmd = app.add_subcommand("report", "Aggregate eval documents into tables");
  report_cmd->add_option("--in", report.inputs, "Eval JSON documents")
      ->required()
      ->expected(-1);
  report_cmd->add_option("--out-dir", report.out_dir, "Report output directory")->required();

  OracleCheckOpts oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "Verify the rule-based solver against gold answers");
  oracle_cmd->add_option("--in", oracle.in, "Corpus JSONL")->required();
  oracle_cmd->add_option("--kind", oracle.kind, "Dataset kind")->required();
  oracle_cmd->add_option("--limit", oracle.limit, "Check at most N instances (0 = all)");

  int rc = kOk;
  try {
    app.parse(argc, argv);
    build.seed_given = seed_opt->count() > 0;
    if (ingest_cmd->parsed()) {
      run_ingest(ingest);
    } else if (decompose_cmd->parsed()) {
      run_decompose(decompose_o);
    } else if (build_cmd->parsed()) {
      run_build_sft(build);
    } else if (infer_cmd->parsed()) {
      run_infer(infer);
    } else if (eval_cmd->parsed()) {
      run_eval(eval);
    } else if (report_cmd->parsed()) {
      run_report(report);
    } else if (oracle_cmd->parsed()) {
      rc = run_oracle_check(oracle);
    }
  } catch (const CLI::ParseError& e) {
    const int cli_rc = app.exit(e);
    return cli_rc == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << error_json(e.what(), kUsage).dump() << '\n';
    return kUsage;
  } catch (const NoInputError& e) {
    std::cerr << error_json(e.what(), kNoInput).dump() << '\n';
    return kNoInput;
  } catch (const IoError& e) {
    std::cerr << error_json(e.what(), kIo).dump() << '\n';
    return kIo;
  } catch (const CollectAborted& e) {
    std::cerr << error_json(e.what(), kUnavailable).dump() << '\n';
    return kUnavailable;
  } catch (const Error& e) {
    std::cerr << error_json(e.what(), kData).dump() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << error_json(e.what(), kSoftware).dump() << '\n';
    return kSoftware;
  }
  return rc;
}
