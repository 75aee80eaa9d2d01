#include "obqa/dates.hpp"

#include <array>
#include <cctype>
#include <string>

namespace obqa {

namespace {

namespace chr = std::chrono;

constexpr std::array<std::string_view, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<unsigned> month_from_name(std::string_view word) {
  const std::string w = lower(word);
  for (unsigned i = 0; i < kMonths.size(); ++i) {
    if (w == kMonths[i]) return i + 1;
  }
  return std::nullopt;
}

bool DateValue::valid() const {
  if (day && !month) return false;
  if (month && (*month < 1 || *month > 12)) return false;
  if (year < -9999 || year > 9999) return false;
  if (day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{*month}, chr::day{*day}};
    if (!ymd.ok()) return false;
  }
  return true;
}

chr::sys_days DateValue::earliest() const {
  const chr::year y{year};
  if (!month) return chr::sys_days{chr::year_month_day{y, chr::month{1}, chr::day{1}}};
  const chr::month m{*month};
  if (!day) return chr::sys_days{chr::year_month_day{y, m, chr::day{1}}};
  return chr::sys_days{chr::year_month_day{y, m, chr::day{*day}}};
}

chr::sys_days DateValue::latest() const {
  const chr::year y{year};
  if (!month) return chr::sys_days{chr::year_month_day{y, chr::month{12}, chr::day{31}}};
  const chr::month m{*month};
  if (!day) return chr::sys_days{chr::year_month_day_last{y, chr::month_day_last{m}}};
  return chr::sys_days{chr::year_month_day{y, m, chr::day{*day}}};
}

}  // namespace obqa
