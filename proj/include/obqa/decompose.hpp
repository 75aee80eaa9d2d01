#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obqa/corpus.hpp"
#include "obqa/dates.hpp"

namespace obqa {

// Pairwise interval relations. "mix" is deliberately absent: it is not a
// pairwise relation but a property of a support set with disagreeing pairs.
enum class TemporalRelation { equal, overlap, during };

std::string_view to_string(TemporalRelation r);

// Exactly one of: equal (identical endpoints), during (proper containment in
// either direction), overlap (proper partial intersection), nullopt (disjoint).
std::optional<TemporalRelation> relation(const Interval& anchor, const Interval& candidate);

struct TemporalMatch {
  Interval interval;
  std::size_t begin = 0;  // byte span of the phrase inside the fact
  std::size_t end = 0;
};

// Recognizes "from <date> to <date>" (preferred) and "in <date>" where <date>
// is "YYYY" | "Month, YYYY" | "Month D, YYYY". First parseable phrase wins.
std::optional<TemporalMatch> find_temporal(std::string_view fact);
std::optional<Interval> extract_interval(std::string_view fact);

// lowercase, non-alphanumerics -> space, runs collapsed, trimmed.
std::string normalize_for_match(std::string_view s);
std::size_t longest_common_substring(std::string_view a, std::string_view b);

// The fact the question restates: longest common normalized substring with
// the question, >= 10 chars; ties go to the earlier fact.
std::optional<std::size_t> anchor_fact(const QAInstance& inst);

// Entity named by a fact once its temporal phrase is removed: the text after
// the earliest of " for ", " of ", " at ", " in " (whole fact if none).
std::string entity_of(std::string_view fact);

struct TraceSkeleton {
  std::string category;
  std::vector<std::size_t> support;  // sorted ascending
  std::optional<std::vector<std::string>> derived_answers;
};

// Diagnostic recomputation of the classification step from raw text. Reports
// agreement with gold labels; never alters them.
struct CrossCheck {
  bool ran = false;
  bool agrees = false;
  std::optional<std::size_t> anchor_index;
  std::string recomputed;  // pairwise label, or "mix"/"none"
  std::vector<std::pair<std::size_t, std::string>> support_relations;
  std::string note;
};

// Gold labels -> reasoning-step skeleton. Throws Error when the instance has
// no support facts. The cross-check runs only for temporal datasets and only
// when a sink is supplied.
TraceSkeleton decompose(const QAInstance& inst, CrossCheck* cross = nullptr);

// Rule-based solver: temporal datasets are solved from raw text (anchor ->
// relations -> entities); for others the gold answers are returned after the
// support indices check out. Throws Error when no answer can be derived.
std::vector<std::string> solve_oracle(const QAInstance& inst);

}  // namespace obqa
