#pragma once

#include <chrono>
#include <optional>
#include <string_view>

namespace obqa {

// A calendar date as written in running text: year always present,
// month and day optional ("1964", "June, 1957", "September 11, 1972").
struct DateValue {
  int year = 0;
  std::optional<unsigned> month;  // 1..12
  std::optional<unsigned> day;    // requires month

  bool valid() const;
  // Day-resolution bounds of the span this (partial) date denotes.
  std::chrono::sys_days earliest() const;
  std::chrono::sys_days latest() const;
};

// Closed interval of days, endpoints included.
struct Interval {
  std::chrono::sys_days lo{};
  std::chrono::sys_days hi{};

  bool operator==(const Interval&) const = default;

  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool intersects(const Interval& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
};

// "September" -> 9; case-insensitive; full English month names only.
std::optional<unsigned> month_from_name(std::string_view word);

}  // namespace obqa
