#pragma once

#include <istream>
#include <string>

#include "tnorder/field.hpp"
#include "tnorder/schedule.hpp"

namespace tnorder {

/// Whitespace-separated "start end omega" lines; "-inf" and "+inf" are
/// accepted for the outer segments. Blank lines and text after '#' are
/// ignored. Throws ConfigError with the offending line number.
FrequencySchedule parse_schedule(std::istream& in);
FrequencySchedule load_schedule(const std::string& path);

/// Field description in the same line format:
///   hbar <value>
///   mode <omega> <re_0> <im_0> [<re_1> <im_1> ...]
///   current <label> <start> <end> <amplitude> <omega> <phase>
///   impulse <label> <time> <weight>
/// A current line adds amplitude * cos(omega t + phase) on (start, end).
struct FieldConfig {
  ModeSet modes;
  ClassicalCurrent current;
};

FieldConfig parse_field_config(std::istream& in);
FieldConfig load_field_config(const std::string& path);

}  // namespace tnorder
