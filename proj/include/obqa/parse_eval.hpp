#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obqa/corpus.hpp"
#include "obqa/trace.hpp"

namespace obqa {

// Which structural pieces were absent from a completion. Flags describe field
// absence, not wrongness: a completion with no <think> span still yields
// answers, just with missing_think (and the step fields unparsed).
struct ParseFlags {
  bool missing_think = false;
  bool missing_answer = false;
  bool category_unparsed = false;
  bool facts_unparsed = false;

  bool any() const {
    return missing_think || missing_answer || category_unparsed || facts_unparsed;
  }
};

struct ParsedOutput {
  std::optional<std::string> category;              // lowercased token
  std::optional<std::vector<std::string>> facts;    // verbatim fact strings
  std::vector<std::string> answers;                 // never empty
  std::string think_text;                           // raw span, "" when absent
  ParseFlags flags;
};

// Total function: any string parses to *something* scoreable.
ParsedOutput parse_output(std::string_view completion, const TraceTemplate& tpl);

// trim -> strip one bracket pair -> strip matching quotes repeatedly ->
// lowercase -> delete ASCII punctuation -> drop articles -> collapse spaces.
std::string normalize_answer(std::string_view s);
std::vector<std::string> answer_tokens(std::string_view s);  // normalize + split

struct AnswerScore {
  bool em = false;  // normalized answer multisets equal
  double precision = 0.0, recall = 0.0, f1 = 0.0;  // token F1, max over gold
};

AnswerScore score_answer(const std::vector<std::string>& predicted,
                         const std::vector<std::string>& gold);
AnswerScore score_answer(std::string_view predicted, std::string_view gold);

struct TraceScore {
  bool classification_correct = false;
  bool ir_correct = false;
  bool trace_correct = false;  // both steps right
};

TraceScore score_trace(const ParsedOutput& parsed, const QAInstance& inst);

struct RecordEval {
  std::string id;
  AnswerScore answer;
  TraceScore trace;
  ParseFlags flags;
  std::size_t trace_len_words = 0;   // whitespace tokens of the think span
  std::size_t trace_len_tokens = 0;  // word+punctuation tokens (diagnostic)
  double per_answer_recall = 0.0;    // share of gold answers present verbatim
  double ir_overlap = 0.0;           // Jaccard of normalized fact sets
};

// 2x2 of solution correctness x trace correctness. The off-diagonal of
// interest is fp: right answer reached through a wrong trace.
struct Confusion {
  std::size_t tp = 0;  // solution correct, trace correct
  std::size_t fp = 0;  // solution correct, trace incorrect
  std::size_t fn = 0;  // solution incorrect, trace correct
  std::size_t tn = 0;  // solution incorrect, trace incorrect

  std::size_t total() const { return tp + fp + fn + tn; }
  Confusion& operator+=(const Confusion& other);
};

// Percentage with 2-decimal half-up rounding (what the tables print).
double pct(std::size_t part, std::size_t whole);

struct ModelOutput {
  std::string id;
  std::string completion;
};

struct EvalOptions {
  bool expect_trace = true;    // off for prompt/vanilla settings
  bool allow_missing = false;  // score absent completions as empty instead of failing
};

struct EvalSummary {
  std::vector<RecordEval> records;
  std::size_t missing = 0;
  Confusion confusion;  // populated only when expect_trace

  // Means over all records, in [0,1].
  double em_rate = 0.0, f1_mean = 0.0, precision_mean = 0.0, recall_mean = 0.0;
  double classification_rate = 0.0, ir_rate = 0.0, trace_rate = 0.0;
  double trace_len_words_mean = 0.0, trace_len_tokens_mean = 0.0;
  double per_answer_recall_mean = 0.0, ir_overlap_mean = 0.0;
};

RecordEval evaluate_one(const QAInstance& inst, std::string_view completion,
                        const TraceTemplate& tpl, bool expect_trace = true);

// Outputs are matched to instances by id; unknown or duplicate output ids are
// errors, as are instances without outputs unless allow_missing.
EvalSummary evaluate(const std::vector<QAInstance>& instances,
                     const std::vector<ModelOutput>& outputs, const TraceTemplate& tpl,
                     const EvalOptions& opts = {});

}  // namespace obqa
