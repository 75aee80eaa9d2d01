// Acceptance gate: one self-contained binary that exercises the documented
// guarantees end to end and prints one PASS/FAIL line per criterion. Exits
// nonzero if any criterion fails. Heavier than the unit tests on purpose:
// volumes, wall-clock budgets, and cross-module pipelines live here.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "httplib.h"

#include "obqa/corpus.hpp"
#include "obqa/decompose.hpp"
#include "obqa/infer_client.hpp"
#include "obqa/parse_eval.hpp"
#include "obqa/report.hpp"
#include "obqa/trace.hpp"

#include "f1_fixtures.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace obqa;
using obqa::testing::TempDir;
using obqa::testing::read_file;
using obqa::testing::write_file;

namespace {

struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& msg) {
    if (cond) return;
    pass = false;
    if (notes.size() < 8) notes.push_back(msg);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

// The two synthetic corpora most criteria share.
const std::vector<QAInstance>& cotemp_corpus() {
  static const std::vector<QAInstance> corpus = synth::gen_cotemp(500, 20250801);
  return corpus;
}

const std::vector<QAInstance>& generic_corpus() {
  static const std::vector<QAInstance> corpus = synth::gen_generic(500, 20250802);
  return corpus;
}

TraceTemplate template_of(const QAInstance& inst) {
  return inst.dataset.family() == DatasetFamily::cotemp ? TraceTemplate::cotemp_default()
                                                        : TraceTemplate::generic_default();
}

// --- criterion 1: frozen bytes --------------------------------------------

Check criterion_template_fidelity() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const QAInstance inst = fixtures::museum_instance();
  const std::string prompt = render_prompt(inst);
  const std::string completion = render_correct(inst, decompose(inst),
                                                TraceTemplate::cotemp_default());
  const double elapsed = seconds_since(start);
  c.expect(prompt == fixtures::kMuseumPrompt, "prompt differs from the frozen bytes");
  c.expect(completion == fixtures::kMuseumCorrectCompletion,
           "completion differs from the frozen bytes");
  c.expect(elapsed < 1.0, "rendering took " + std::to_string(elapsed) + "s (budget 1s)");
  return c;
}

// --- criterion 2: parse ∘ render round-trip -------------------------------

Check criterion_round_trip() {
  Check c;
  std::size_t total = 0, exact = 0;
  for (const auto* corpus : {&cotemp_corpus(), &generic_corpus()}) {
    for (const QAInstance& inst : *corpus) {
      ++total;
      const TraceTemplate tpl = template_of(inst);
      const TraceSkeleton sk = decompose(inst);
      const ParsedOutput parsed = parse_output(render_correct(inst, sk, tpl), tpl);

      std::vector<std::string> support_facts;
      for (std::size_t idx : sk.support) support_facts.push_back(inst.facts[idx]);

      const bool ok = !parsed.flags.any() && parsed.category == sk.category &&
                      parsed.facts == support_facts && parsed.answers == inst.gold_answers;
      if (ok) {
        ++exact;
      } else {
        c.expect(false, "round-trip loss on " + inst.id);
      }
    }
  }
  c.expect(total >= 1000, "corpus too small: " + std::to_string(total));
  c.expect(exact == total,
           std::to_string(exact) + "/" + std::to_string(total) + " exact recoveries");
  return c;
}

// --- criterion 3: corruption guarantees -----------------------------------

Check criterion_corruption() {
  Check c;
  const CorruptionPolicy policy{.seed = 424242, .corrupt_category = true, .corrupt_facts = true};
  std::size_t total = 0;

  for (const auto* corpus : {&cotemp_corpus(), &generic_corpus()}) {
    std::vector<ModelOutput> outputs;
    for (const QAInstance& inst : *corpus) {
      ++total;
      const TraceTemplate tpl = template_of(inst);
      const CorruptedTrace ct = corrupt(inst, decompose(inst), tpl, policy);
      c.expect(ct.category != inst.gold_category, inst.id + ": category not corrupted");
      c.expect(!ct.support.empty(), inst.id + ": corrupted support empty");
      for (std::size_t idx : ct.support) {
        c.expect(inst.gold_support.count(idx) == 0,
                 inst.id + ": corrupted support intersects gold");
      }
      outputs.push_back({inst.id, ct.completion});
    }
    const EvalSummary sum = evaluate(*corpus, outputs, template_of((*corpus)[0]));
    c.expect(sum.classification_rate == 0.0,
             "classification accuracy " + std::to_string(sum.classification_rate) +
                 " != 0 on corrupted traces");
    c.expect(sum.ir_rate == 0.0,
             "IR accuracy " + std::to_string(sum.ir_rate) + " != 0 on corrupted traces");
  }
  c.expect(total >= 1000, "corpus too small: " + std::to_string(total));
  return c;
}

// --- criterion 4: gold replay scores perfectly ----------------------------

Check criterion_gold_replay() {
  Check c;
  for (const auto* corpus : {&cotemp_corpus(), &generic_corpus()}) {
    std::vector<ModelOutput> outputs;
    for (const QAInstance& inst : *corpus) {
      outputs.push_back({inst.id, render_correct(inst, decompose(inst), template_of(inst))});
    }
    const EvalSummary sum = evaluate(*corpus, outputs, template_of((*corpus)[0]));
    c.expect(sum.em_rate == 1.0, "EM " + std::to_string(sum.em_rate) + " != 1 on gold replay");
    c.expect(sum.classification_rate == 1.0,
             "classification " + std::to_string(sum.classification_rate) + " != 1");
    c.expect(sum.ir_rate == 1.0, "IR " + std::to_string(sum.ir_rate) + " != 1");
    c.expect(sum.confusion.tp == sum.records.size(), "not every record lands in tp");
  }
  return c;
}

// --- criterion 5: rule-based solver agreement -----------------------------

Check criterion_oracle() {
  Check c;
  std::size_t agree = 0;
  for (const QAInstance& inst : cotemp_corpus()) {
    std::vector<std::string> derived;
    try {
      derived = solve_oracle(inst);
    } catch (const Error& e) {
      c.expect(false, inst.id + ": " + e.what());
      continue;
    }
    std::vector<std::string> gold = inst.gold_answers;
    std::sort(derived.begin(), derived.end());
    std::sort(gold.begin(), gold.end());
    if (derived == gold) {
      ++agree;
    } else {
      c.expect(false, inst.id + ": oracle answers differ from gold");
    }
  }
  c.expect(agree == cotemp_corpus().size(),
           std::to_string(agree) + "/" + std::to_string(cotemp_corpus().size()) +
               " temporal instances agree");

  const synth::BabiFixture babi = synth::gen_babi_task1(40, 20250803);
  const auto stories = parse_babi(babi.text, "single-supporting-fact");
  c.expect(stories.size() == babi.questions,
           "parsed " + std::to_string(stories.size()) + " questions, generated " +
               std::to_string(babi.questions));
  std::size_t babi_agree = 0;
  for (const QAInstance& inst : stories) {
    if (solve_oracle(inst) == inst.gold_answers) ++babi_agree;
  }
  c.expect(babi_agree == stories.size(), "story-task agreement below 100%");

  const auto museum = solve_oracle(fixtures::museum_instance());
  c.expect(museum == std::vector<std::string>{"History Museum of Armenia"},
           "worked example does not yield exactly its gold answer");
  return c;
}

// --- criterion 6: frozen scoring fixtures ---------------------------------

Check criterion_metric_oracle() {
  Check c;
  const AnswerScore spot = score_answer("History Museum", "History Museum of Armenia");
  c.expect(near(spot.precision, 1.0), "spot precision " + std::to_string(spot.precision));
  c.expect(near(spot.recall, 0.5), "spot recall " + std::to_string(spot.recall));
  c.expect(near(spot.f1, 2.0 / 3.0), "spot f1 " + std::to_string(spot.f1));

  const auto& cases = fixtures::f1_cases();
  c.expect(cases.size() == 50, "fixture table has " + std::to_string(cases.size()) + " rows");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& fix = cases[i];
    const AnswerScore s = score_answer(fix.pred, fix.gold);
    const bool ok = s.em == fix.em && near(s.precision, fix.precision) &&
                    near(s.recall, fix.recall) && near(s.f1, fix.f1);
    c.expect(ok, "fixture row " + std::to_string(i) + " mismatch");
  }
  return c;
}

// --- criterion 7: confusion accounting ------------------------------------

Check criterion_confusion() {
  Check c;

  // One instance per quadrant.
  std::vector<QAInstance> corpus;
  for (int i = 0; i < 4; ++i) {
    QAInstance inst;
    inst.id = "quad-" + std::to_string(i);
    inst.dataset = DatasetKind::cotemp();
    inst.facts = {"Fact A.", "Fact B."};
    inst.question = "Which?";
    inst.gold_answers = {"alpha"};
    inst.gold_category = "equal";
    inst.gold_support = {0};
    corpus.push_back(std::move(inst));
  }
  const auto completion = [](const std::string& category, const std::string& fact,
                             const std::string& answer) {
    return "<think>The temporal relation between the event in question and the event in "
           "context is: " +
           category + ". I need to use the following facts to answer the question: ['" + fact +
           "']</think> <answer>['" + answer + "']</answer>";
  };
  const std::vector<ModelOutput> outputs = {
      {"quad-0", completion("equal", "Fact A.", "alpha")},   // solution ok, trace ok
      {"quad-1", completion("during", "Fact A.", "alpha")},  // solution ok, trace wrong
      {"quad-2", completion("equal", "Fact A.", "beta")},    // solution wrong, trace ok
      {"quad-3", completion("during", "Fact B.", "beta")},   // both wrong
  };
  const EvalSummary sum = evaluate(corpus, outputs, TraceTemplate::cotemp_default());
  c.expect(sum.confusion.tp == 1 && sum.confusion.fp == 1 && sum.confusion.fn == 1 &&
               sum.confusion.tn == 1,
           "quadrant corpus does not land one record per cell");
  c.expect(sum.confusion.total() == corpus.size(), "quadrant total != N");

  // Percentages of random tables always sum to 100 within rounding slack.
  SplitMix64 rng(7777);
  for (int i = 0; i < 200; ++i) {
    const Confusion cf{.tp = rng.below(500), .fp = rng.below(500), .fn = rng.below(500),
                       .tn = 1 + rng.below(500)};
    const double sum_pct = pct(cf.tp, cf.total()) + pct(cf.fp, cf.total()) +
                           pct(cf.fn, cf.total()) + pct(cf.tn, cf.total());
    c.expect(std::fabs(sum_pct - 100.0) <= 0.02 + 1e-9,
             "percent sum " + std::to_string(sum_pct) + " outside 100 +/- 0.02");
    c.expect(cf.tp + cf.fp + cf.fn + cf.tn == cf.total(), "cell sum != total");
  }
  return c;
}

// --- criterion 8: relation algebra vs day sets ----------------------------

Check criterion_relation_algebra() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(20250804);
  std::size_t checked = 0;
  std::map<std::string, std::size_t> seen;

  for (int i = 0; i < 10000; ++i) {
    const Interval a = synth::random_interval(rng);
    Interval b = synth::random_interval(rng);
    switch (i % 10) {
      case 0:
        b = a;  // force the rarest class
        break;
      case 1:
        b = Interval{a.hi, a.hi + std::chrono::days{static_cast<long>(rng.below(400))}};
        break;
      case 2:
        b = Interval{a.lo - std::chrono::days{static_cast<long>(rng.below(400))}, a.lo};
        break;
      default:
        break;
    }

    // Independent predicates materialized from day sets.
    const std::vector<long> da = synth::day_set(a);
    const std::vector<long> db = synth::day_set(b);
    std::vector<long> inter;
    std::set_intersection(da.begin(), da.end(), db.begin(), db.end(),
                          std::back_inserter(inter));
    const bool p_equal = da == db;
    const bool p_none = inter.empty();
    const bool a_in_b = std::includes(db.begin(), db.end(), da.begin(), da.end());
    const bool b_in_a = std::includes(da.begin(), da.end(), db.begin(), db.end());
    const bool p_during = !p_equal && (a_in_b || b_in_a);
    const bool p_overlap = !p_none && !p_equal && !p_during;

    const int holds = int(p_equal) + int(p_none) + int(p_during) + int(p_overlap);
    c.expect(holds == 1, "pair " + std::to_string(i) + ": " + std::to_string(holds) +
                             " classes hold at once");

    const std::string brute = p_equal     ? "equal"
                              : p_none    ? "none"
                              : p_during  ? "during"
                                          : "overlap";
    const auto r = relation(a, b);
    const std::string got = r ? std::string(to_string(*r)) : "none";
    c.expect(got == brute,
             "pair " + std::to_string(i) + ": relation says " + got + ", day sets say " + brute);
    ++seen[brute];
    ++checked;
  }

  const double elapsed = seconds_since(start);
  c.expect(checked == 10000, "checked " + std::to_string(checked) + " pairs");
  for (const char* label : {"equal", "during", "overlap", "none"}) {
    c.expect(seen[label] > 0, std::string("class never exercised: ") + label);
  }
  c.expect(elapsed < 10.0, "took " + std::to_string(elapsed) + "s (budget 10s)");
  return c;
}

// --- criterion 9: inference client against a scripted endpoint ------------

struct ScriptedEndpoint {
  httplib::Server srv;
  int port = 0;
  std::thread th;
  std::mutex mu;
  std::map<std::string, int> seen;

  ScriptedEndpoint() {
    srv.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      const Json body = Json::parse(req.body, nullptr, false);
      const std::string prompt = body["messages"][0]["content"].get<std::string>();
      int nth = 0;
      {
        std::lock_guard<std::mutex> lock(mu);
        nth = ++seen[prompt];
      }
      if (prompt.rfind("limited", 0) == 0 && nth <= 2) {
        res.status = 429;
        res.set_header("Retry-After", "0");
        return;
      }
      if (prompt.rfind("slow", 0) == 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
      Json reply;
      reply["choices"] = Json::array(
          {Json{{"message", Json{{"role", "assistant"}, {"content", "echo: " + prompt}}}}});
      res.set_content(reply.dump(), "application/json");
    });
    port = srv.bind_to_any_port("127.0.0.1");
    th = std::thread([this] { srv.listen_after_bind(); });
    srv.wait_until_ready();
  }
  ~ScriptedEndpoint() {
    srv.stop();
    if (th.joinable()) th.join();
  }
};

Check criterion_infer_client() {
  Check c;
  ScriptedEndpoint ep;
  if (ep.port <= 0) {
    c.expect(false, "could not bind the scripted endpoint");
    return c;
  }
  TempDir cache("acceptance-cache");
  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(ep.port);
  cfg.model_name = "scripted";
  cfg.backoff_base_ms = 1;
  cfg.max_retries = 3;
  cfg.max_in_flight = 2;

  std::vector<InferRequest> requests;
  for (int i = 0; i < 8; ++i) {
    requests.push_back({"req-" + std::to_string(i), "slow prompt " + std::to_string(i)});
  }

  std::vector<std::string> first_batch;
  {
    InferClient client(cfg, cache.path().string());
    CollectStats stats;
    const auto results = client.collect(requests, &stats);
    for (const auto& r : results) {
      c.expect(r.ok, r.id + " failed: " + r.error);
      first_batch.push_back(r.completion);
    }
    c.expect(stats.network_calls == requests.size(),
             "expected one call per request, saw " + std::to_string(stats.network_calls));
    c.expect(stats.max_in_flight_observed <= 2,
             "in-flight " + std::to_string(stats.max_in_flight_observed) + " exceeds limit 2");
  }

  // Rerun with a fresh client: everything must come from the cache.
  {
    InferClient client(cfg, cache.path().string());
    CollectStats stats;
    const auto results = client.collect(requests, &stats);
    c.expect(stats.network_calls == 0,
             "warm rerun made " + std::to_string(stats.network_calls) + " network calls");
    c.expect(stats.cache_hits == requests.size(), "warm rerun missed the cache");
    for (std::size_t i = 0; i < results.size(); ++i) {
      c.expect(results[i].completion == first_batch[i], "warm completion differs");
      c.expect(results[i].from_cache, results[i].id + " not served from cache");
    }
  }

  // Rate limited twice, then served: three attempts total.
  {
    InferClient client(cfg);
    CollectStats stats;
    const auto results = client.collect({{"rl", "limited request"}}, &stats);
    c.expect(results.size() == 1 && results[0].ok, "rate-limited request did not recover");
    c.expect(results[0].attempts == 3,
             "expected 3 attempts, saw " + std::to_string(results[0].attempts));
    c.expect(stats.network_calls == 3, "retry schedule made the wrong number of calls");
  }
  return c;
}

// --- criterion 10: end-to-end pipeline ------------------------------------

int run_cli(const std::string& bin, const TempDir& dir, const std::string& args,
            std::string* out_text = nullptr) {
  const auto out_path = dir.file("step.stdout");
  const auto err_path = dir.file("step.stderr");
  const std::string cmd = "\"" + bin + "\" " + args + " > \"" + out_path.string() + "\" 2> \"" +
                          err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  if (out_text) *out_text = read_file(out_path);
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Check criterion_pipeline() {
  Check c;
  const char* bin = std::getenv("OBQA_CLI");
  if (!bin) {
    c.expect(false, "OBQA_CLI is not set; cannot drive the command-line tool");
    return c;
  }
  const auto start = std::chrono::steady_clock::now();
  TempDir dir("acceptance-e2e");

  // 1,000 temporal instances, written as the raw corpus.
  {
    const auto corpus = synth::gen_cotemp(1000, 20250805);
    std::ofstream out(dir.file("raw.jsonl"));
    serialize(corpus, out);
  }

  const auto step = [&](const std::string& label, const std::string& args) {
    const int rc = run_cli(bin, dir, args);
    c.expect(rc == 0, label + " exited " + std::to_string(rc));
    return rc == 0;
  };

  const std::string corpus_path = dir.file("corpus.jsonl").string();
  bool ok = step("ingest", "ingest --kind cotemp --in " + dir.file("raw.jsonl").string() +
                               " --out " + corpus_path);
  ok = ok && step("decompose", "decompose --kind cotemp --cross-check --in " + corpus_path +
                                   " --out " + dir.file("skeletons.jsonl").string());
  ok = ok && step("build-sft correct",
                  "build-sft --kind cotemp --mode correct_trace --in " + corpus_path +
                      " --out " + dir.file("sft_correct.jsonl").string());
  ok = ok && step("build-sft incorrect",
                  "build-sft --kind cotemp --mode incorrect_trace --seed 99 --in " +
                      corpus_path + " --out " + dir.file("sft_incorrect.jsonl").string());
  if (!ok) return c;

  // Replay each build's completions as if a model had produced them.
  for (const char* variant : {"correct", "incorrect"}) {
    std::ifstream in(dir.file(std::string("sft_") + variant + ".jsonl"));
    std::ofstream out(dir.file(std::string("replay_") + variant + ".jsonl"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json rec = Json::parse(line);
      Json row;
      row["id"] = rec["id"];
      row["completion"] = rec["completion"];
      out << row.dump() << '\n';
    }
  }

  ok = step("eval correct", "eval --kind cotemp --setting sft-correct-trace --model replay "
                            "--corpus " +
                                corpus_path + " --completions " +
                                dir.file("replay_correct.jsonl").string() + " --out " +
                                dir.file("eval_correct.json").string());
  ok = ok && step("eval incorrect",
                  "eval --kind cotemp --setting sft-incorrect-trace --model replay --corpus " +
                      corpus_path + " --completions " +
                      dir.file("replay_incorrect.jsonl").string() + " --out " +
                      dir.file("eval_incorrect.json").string());
  ok = ok && step("report", "report --in " + dir.file("eval_correct.json").string() + " " +
                                dir.file("eval_incorrect.json").string() + " --out-dir " +
                                dir.file("report").string());
  if (!ok) return c;

  // The correct replay is perfect; the corrupted replay keeps the gold answer
  // but never the gold trace, so every record is a false positive.
  const Json eval_correct = Json::parse(read_file(dir.file("eval_correct.json")));
  c.expect(eval_correct["metrics"]["em"] == 1.0, "correct replay EM != 1");
  c.expect(eval_correct["confusion"]["tp"] == 1000, "correct replay tp != 1000");
  const Json eval_incorrect = Json::parse(read_file(dir.file("eval_incorrect.json")));
  c.expect(eval_incorrect["metrics"]["em"] == 1.0, "corrupted replay EM != 1");
  c.expect(eval_incorrect["metrics"]["classification"] == 0.0,
           "corrupted replay classification != 0");
  c.expect(eval_incorrect["metrics"]["ir"] == 0.0, "corrupted replay IR != 0");
  c.expect(eval_incorrect["confusion"]["fp"] == 1000, "corrupted replay fp != 1000");

  // Report table: header plus one row per evaluation.
  const std::string md = read_file(dir.file("report") / "report.md");
  c.expect(md.rfind("| Model | Query setting | EM | F1 | Precision | Recall | Classification "
                    "| IR | Trace | Trace len |",
                    0) == 0,
           "markdown table header missing");
  c.expect(md.find("| replay | sft-correct-trace | 100.00 |") != std::string::npos,
           "correct-trace row missing");
  c.expect(md.find("| replay | sft-incorrect-trace | 100.00 |") != std::string::npos,
           "incorrect-trace row missing");

  // Confusion document: counts, percentages, and the 2x2 grid layout.
  const Json confusion =
      Json::parse(read_file(dir.file("report") / "confusion.sft-incorrect-trace.json"));
  c.expect(confusion["total"] == 1000, "confusion total != 1000");
  c.expect(confusion["counts"]["fp"] == 1000, "confusion fp != 1000");
  c.expect(confusion["percent"]["fp"] == 100.0, "confusion fp percent != 100");
  c.expect(confusion["grid"]["cells"][1][0] == "fp", "grid layout unexpected");

  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "pipeline took " + std::to_string(elapsed) + "s (budget 60s)");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"frozen prompt and completion bytes", criterion_template_fidelity},
      {"parse/render round-trip on 1,000 instances", criterion_round_trip},
      {"corruption disjointness and zero step accuracy", criterion_corruption},
      {"gold replay scores 100% across the board", criterion_gold_replay},
      {"rule-based solver agreement with gold answers", criterion_oracle},
      {"frozen answer-scoring fixtures within 1e-9", criterion_metric_oracle},
      {"confusion accounting and quadrant semantics", criterion_confusion},
      {"relation algebra vs brute-force day sets (10,000 pairs)", criterion_relation_algebra},
      {"inference client cache, concurrency bound, and retries", criterion_infer_client},
      {"end-to-end pipeline on 1,000 instances", criterion_pipeline},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.pass = false;
      result.notes.push_back(std::string("unhandled exception: ") + e.what());
    }
    std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
              << criteria[i].first << "\n";
    for (const std::string& note : result.notes) std::cout << "       - " << note << "\n";
    if (!result.pass) ++failures;
  }
  if (failures) {
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed\n";
  return 0;
}
