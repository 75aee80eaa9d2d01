#include "obqa/decompose.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace obqa {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::size_t skip_spaces(std::string_view s, std::size_t p) {
  while (p < s.size() && s[p] == ' ') ++p;
  return p;
}

struct DateParse {
  DateValue value;
  std::size_t end = 0;
};

// Date expression at position p: "YYYY" | "Month, YYYY" | "Month D, YYYY".
std::optional<DateParse> parse_date_at(std::string_view s, std::size_t p) {
  if (p >= s.size()) return std::nullopt;

  const auto year_at = [&](std::size_t q) -> std::optional<std::pair<int, std::size_t>> {
    std::size_t d = q;
    while (d < s.size() && is_digit(s[d])) ++d;
    if (d - q != 4) return std::nullopt;
    if (d < s.size() && is_alnum(s[d])) return std::nullopt;
    return std::make_pair(std::stoi(std::string(s.substr(q, 4))), d);
  };

  if (is_digit(s[p])) {
    const auto y = year_at(p);
    if (!y) return std::nullopt;
    DateValue v{y->first, std::nullopt, std::nullopt};
    if (!v.valid()) return std::nullopt;
    return DateParse{v, y->second};
  }

  if (!is_alpha(s[p])) return std::nullopt;
  std::size_t w = p;
  while (w < s.size() && is_alpha(s[w])) ++w;
  const auto month = month_from_name(s.substr(p, w - p));
  if (!month) return std::nullopt;

  if (w < s.size() && s[w] == ',') {
    // "Month, YYYY"
    std::size_t q = skip_spaces(s, w + 1);
    const auto y = year_at(q);
    if (!y) return std::nullopt;
    DateValue v{y->first, month, std::nullopt};
    if (!v.valid()) return std::nullopt;
    return DateParse{v, y->second};
  }

  if (w < s.size() && s[w] == ' ') {
    // "Month D, YYYY"
    std::size_t q = skip_spaces(s, w);
    std::size_t d = q;
    while (d < s.size() && is_digit(s[d])) ++d;
    if (d == q || d - q > 2) return std::nullopt;
    const unsigned day = static_cast<unsigned>(std::stoi(std::string(s.substr(q, d - q))));
    if (d >= s.size() || s[d] != ',') return std::nullopt;
    std::size_t q2 = skip_spaces(s, d + 1);
    const auto y = year_at(q2);
    if (!y) return std::nullopt;
    DateValue v{y->first, month, day};
    if (!v.valid()) return std::nullopt;
    return DateParse{v, y->second};
  }

  return std::nullopt;
}

bool word_starts_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() >= s.size()) return false;  // need a char after for the space
  if (s.compare(pos, word.size(), word) != 0) return false;
  if (pos > 0 && s[pos - 1] != ' ') return false;
  return s[pos + word.size()] == ' ';
}

std::optional<TemporalMatch> make_match(std::size_t begin, const DateValue& lo_date,
                                        const DateValue& hi_date, std::size_t end) {
  const Interval iv{lo_date.earliest(), hi_date.latest()};
  if (iv.lo > iv.hi) return std::nullopt;  // reversed range: ill-formed phrase
  return TemporalMatch{iv, begin, end};
}

}  // namespace

std::string_view to_string(TemporalRelation r) {
  switch (r) {
    case TemporalRelation::equal:
      return "equal";
    case TemporalRelation::overlap:
      return "overlap";
    case TemporalRelation::during:
      return "during";
  }
  return "";
}

std::optional<TemporalRelation> relation(const Interval& anchor, const Interval& candidate) {
  if (!anchor.intersects(candidate)) return std::nullopt;
  if (anchor == candidate) return TemporalRelation::equal;
  if (anchor.contains(candidate) || candidate.contains(anchor)) return TemporalRelation::during;
  return TemporalRelation::overlap;
}

std::optional<TemporalMatch> find_temporal(std::string_view fact) {
  // "from <date> to <date>"
  for (std::size_t pos = fact.find("from"); pos != std::string_view::npos;
       pos = fact.find("from", pos + 1)) {
    if (!word_starts_at(fact, pos, "from")) continue;
    const auto lo = parse_date_at(fact, skip_spaces(fact, pos + 5));
    if (!lo) continue;
    std::size_t q = skip_spaces(fact, lo->end);
    if (q == lo->end || !word_starts_at(fact, q, "to")) continue;
    const auto hi = parse_date_at(fact, skip_spaces(fact, q + 3));
    if (!hi) continue;
    if (auto m = make_match(pos, lo->value, hi->value, hi->end)) return m;
    return std::nullopt;  // parsed but reversed: treat fact as atemporal
  }

  // "in <date>"
  for (std::size_t pos = fact.find("in"); pos != std::string_view::npos;
       pos = fact.find("in", pos + 1)) {
    if (!word_starts_at(fact, pos, "in")) continue;
    const auto d = parse_date_at(fact, skip_spaces(fact, pos + 3));
    if (!d) continue;
    return make_match(pos, d->value, d->value, d->end);
  }

  return std::nullopt;
}

std::optional<Interval> extract_interval(std::string_view fact) {
  if (const auto m = find_temporal(fact)) return m->interval;
  return std::nullopt;
}

std::string normalize_for_match(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_alnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::size_t longest_common_substring(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

std::optional<std::size_t> anchor_fact(const QAInstance& inst) {
  constexpr std::size_t kMinOverlap = 10;
  const std::string q = normalize_for_match(inst.question);
  std::optional<std::size_t> best;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < inst.facts.size(); ++i) {
    const std::size_t len = longest_common_substring(q, normalize_for_match(inst.facts[i]));
    if (len > best_len) {
      best_len = len;
      best = i;
    }
  }
  if (best_len < kMinOverlap) return std::nullopt;
  return best;
}

std::string entity_of(std::string_view fact) {
  std::string stripped;
  if (const auto m = find_temporal(fact)) {
    stripped.append(fact.substr(0, m->begin));
    stripped.append(fact.substr(m->end));
  } else {
    stripped.assign(fact);
  }

  static constexpr std::string_view kMarkers[] = {" for ", " of ", " at ", " in "};
  std::size_t at = std::string::npos;
  std::size_t skip = 0;
  for (std::string_view marker : kMarkers) {
    const std::size_t pos = stripped.find(marker);
    if (pos != std::string::npos && pos < at) {
      at = pos;
      skip = marker.size();
    }
  }

  std::string_view entity{stripped};
  if (at != std::string::npos) entity = entity.substr(at + skip);
  while (!entity.empty() &&
         (entity.back() == ' ' || entity.back() == '.' || entity.back() == ',' ||
          entity.back() == ';' || entity.back() == ':')) {
    entity.remove_suffix(1);
  }
  while (!entity.empty() && entity.front() == ' ') entity.remove_prefix(1);
  return std::string(entity);
}

namespace {

void run_cross_check(const QAInstance& inst, const std::vector<std::size_t>& support,
                     CrossCheck& cc) {
  cc.ran = true;
  cc.anchor_index = anchor_fact(inst);
  if (!cc.anchor_index) {
    cc.note = "no anchor fact found";
    return;
  }
  const auto anchor_iv = extract_interval(inst.facts[*cc.anchor_index]);
  if (!anchor_iv) {
    cc.note = "anchor fact has no temporal phrase";
    return;
  }

  std::set<std::string> distinct;
  for (std::size_t idx : support) {
    std::string label = "none";
    if (const auto iv = extract_interval(inst.facts[idx])) {
      if (const auto r = relation(*anchor_iv, *iv)) label = std::string(to_string(*r));
    }
    cc.support_relations.emplace_back(idx, label);
    distinct.insert(label);
  }
  cc.recomputed = distinct.size() == 1 ? *distinct.begin() : "mix";
  cc.agrees = (cc.recomputed == inst.gold_category);
  if (!cc.agrees) {
    cc.note = "recomputed '" + cc.recomputed + "' disagrees with gold '" + inst.gold_category +
              "'";
  }
}

}  // namespace

TraceSkeleton decompose(const QAInstance& inst, CrossCheck* cross) {
  if (inst.gold_support.empty()) {
    throw Error("instance '" + inst.id + "' has no support facts");
  }
  for (std::size_t idx : inst.gold_support) {
    if (idx >= inst.facts.size()) {
      throw Error("instance '" + inst.id + "': support index " + std::to_string(idx) +
                  " out of range");
    }
  }

  TraceSkeleton sk;
  sk.category = inst.gold_category;
  sk.support.assign(inst.gold_support.begin(), inst.gold_support.end());

  if (cross && inst.dataset.family() == DatasetFamily::cotemp) {
    run_cross_check(inst, sk.support, *cross);
  }
  return sk;
}

std::vector<std::string> solve_oracle(const QAInstance& inst) {
  if (inst.dataset.family() != DatasetFamily::cotemp) {
    if (inst.gold_support.empty()) {
      throw Error("instance '" + inst.id + "' has no support facts");
    }
    for (std::size_t idx : inst.gold_support) {
      if (idx >= inst.facts.size()) {
        throw Error("instance '" + inst.id + "': support index " + std::to_string(idx) +
                    " out of range");
      }
    }
    return inst.gold_answers;
  }

  const auto anchor = anchor_fact(inst);
  if (!anchor) throw Error("instance '" + inst.id + "': no anchor fact");
  const auto anchor_iv = extract_interval(inst.facts[*anchor]);
  if (!anchor_iv) {
    throw Error("instance '" + inst.id + "': anchor fact has no temporal phrase");
  }

  const std::string& target = inst.gold_category;
  std::vector<std::string> answers;
  for (std::size_t i = 0; i < inst.facts.size(); ++i) {
    if (i == *anchor) continue;
    const auto iv = extract_interval(inst.facts[i]);
    if (!iv) continue;
    const auto r = relation(*anchor_iv, *iv);
    const bool match = target == "mix" ? r.has_value() : (r && to_string(*r) == target);
    if (!match) continue;
    std::string entity = entity_of(inst.facts[i]);
    if (std::find(answers.begin(), answers.end(), entity) == answers.end()) {
      answers.push_back(std::move(entity));
    }
  }
  if (answers.empty()) {
    throw Error("instance '" + inst.id + "': no fact satisfies relation '" + target + "'");
  }
  return answers;
}

}  // namespace obqa
