#pragma once

// The worked example used throughout the unit and acceptance tests: ten
// employment facts about one person, a "during the same time period"
// question, and the frozen prompt/completion strings the renderers must
// reproduce byte-for-byte. Keep every literal here exactly as is; tests
// compare against these bytes.

#include <string>

#include "obqa/corpus.hpp"

namespace obqa::fixtures {

inline QAInstance museum_instance() {
  QAInstance inst;
  inst.id = "cotemp-museum-1";
  inst.dataset = DatasetKind::cotemp();
  inst.facts = {
      "Morus Hasratyan worked for The Newcastle upon Tyne Hospitals NHS Foundation Trust from "
      "September 11, 1972 to December 18, 1974.",
      "Morus Hasratyan is a member of the Communist Party of the Soviet Union in 1955.",
      "Morus Hasratyan works for Haigazian University from 1965 to 1966.",
      "Morus Hasratyan worked for Bishop's University from 1972 to 1975.",
      "Morus Hasratyan worked for ISCTE – Lisbon University Institute from June, 1957 to "
      "December, 1960.",
      "Morus Hasratyan works for History Museum of Armenia from 1964 to 1975.",
      "Morus Hasratyan worked for Royal Air Force College Cranwell in February, 1959.",
      "Morus Hasratyan worked for University of Detroit Mercy in September, 1963.",
      "Morus Hasratyan worked for Tagesspiegel from May, 1957 to November, 1957.",
      "Morus Hasratyan worked for North Carolina State University in May, 1962.",
  };
  inst.question =
      "While Morus Hasratyan was working for Haigazian University, which employer did Morus "
      "Hasratyan work for during the same time period?";
  inst.gold_answers = {"History Museum of Armenia"};
  inst.gold_category = "during";
  inst.gold_support = {5};
  return inst;
}

inline const std::string kMuseumPrompt =
    "Answer the question based on the context: "
    R"(['Morus Hasratyan worked for The Newcastle upon Tyne Hospitals NHS Foundation Trust from September 11, 1972 to December 18, 1974.', 'Morus Hasratyan is a member of the Communist Party of the Soviet Union in 1955.', 'Morus Hasratyan works for Haigazian University from 1965 to 1966.', 'Morus Hasratyan worked for Bishop\'s University from 1972 to 1975.', 'Morus Hasratyan worked for ISCTE )"
    "–"
    R"( Lisbon University Institute from June, 1957 to December, 1960.', 'Morus Hasratyan works for History Museum of Armenia from 1964 to 1975.', 'Morus Hasratyan worked for Royal Air Force College Cranwell in February, 1959.', 'Morus Hasratyan worked for University of Detroit Mercy in September, 1963.', 'Morus Hasratyan worked for Tagesspiegel from May, 1957 to November, 1957.', 'Morus Hasratyan worked for North Carolina State University in May, 1962.'])"
    " Question: While Morus Hasratyan was working for Haigazian University, which employer did "
    "Morus Hasratyan work for during the same time period? Only return the answer.";

inline const std::string kMuseumCorrectCompletion =
    "<think>The temporal relation between the event in question and the event in context is: "
    "during. I need to use the following facts to answer the question: ['Morus Hasratyan works "
    "for History Museum of Armenia from 1964 to 1975.']</think> <answer>['History Museum of "
    "Armenia']</answer>";

}  // namespace obqa::fixtures
