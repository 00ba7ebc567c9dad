// Copyright 2026 The GroundPilot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/timeutil.hpp"

#include <chrono>
#include <cstdio>

#include "core/error.hpp"

namespace groundpilot {

namespace {

using std::chrono::day;
using std::chrono::days;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

year_month_day to_ymd(const CivilDate& d) {
  return year_month_day{year{d.year}, month{static_cast<unsigned>(d.month)},
                        day{static_cast<unsigned>(d.day)}};
}

CivilDate from_ymd(const year_month_day& ymd) {
  return CivilDate{int(ymd.year()), int(unsigned(ymd.month())),
                   int(unsigned(ymd.day()))};
}

bool all_digits(const std::string& s, size_t begin, size_t end) {
  if (end > s.size()) return false;
  for (size_t i = begin; i < end; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

int to_int(const std::string& s, size_t begin, size_t end) {
  int v = 0;
  for (size_t i = begin; i < end; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

CivilDate parse_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !all_digits(text, 0, 4) || !all_digits(text, 5, 7) ||
      !all_digits(text, 8, 10)) {
    throw_error(ErrorCode::kParse, "malformed date: '" + text + "'");
  }
  CivilDate d{to_int(text, 0, 4), to_int(text, 5, 7), to_int(text, 8, 10)};
  if (!to_ymd(d).ok()) {
    throw_error(ErrorCode::kParse, "invalid calendar date: '" + text + "'");
  }
  return d;
}

std::int64_t parse_timestamp(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.back() == 'Z') s.pop_back();
  if (s.size() == 10) return date_to_epoch(parse_date(s));
  if (s.size() == 19 && s[10] == 'T' && s[13] == ':' && s[16] == ':' &&
      all_digits(s, 11, 13) && all_digits(s, 14, 16) && all_digits(s, 17, 19)) {
    CivilDate d = parse_date(s.substr(0, 10));
    int hh = to_int(s, 11, 13);
    int mm = to_int(s, 14, 16);
    int ss = to_int(s, 17, 19);
    if (hh > 23 || mm > 59 || ss > 60) {
      throw_error(ErrorCode::kParse, "invalid time of day: '" + text + "'");
    }
    return date_to_epoch(d) + hh * 3600 + mm * 60 + ss;
  }
  throw_error(ErrorCode::kParse, "malformed timestamp: '" + text + "'");
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::int64_t day_index = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    day_index -= 1;
  }
  CivilDate d = from_ymd(year_month_day{sys_days{days{day_index}}});
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year,
                d.month, d.day, int(rem / 3600), int((rem % 3600) / 60),
                int(rem % 60));
  return buf;
}

std::string format_date(const CivilDate& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.year, date.month,
                date.day);
  return buf;
}

CivilDate epoch_to_date(std::int64_t epoch_seconds) {
  std::int64_t day_index = epoch_seconds / 86400;
  if (epoch_seconds % 86400 < 0) day_index -= 1;
  return from_ymd(year_month_day{sys_days{days{day_index}}});
}

std::int64_t date_to_epoch(const CivilDate& date) {
  sys_days sd{to_ymd(date)};
  return std::int64_t{sd.time_since_epoch().count()} * 86400;
}

CivilDate add_days(const CivilDate& date, int delta) {
  return from_ymd(year_month_day{sys_days{to_ymd(date)} + days{delta}});
}

CivilDate first_day_of_month(const CivilDate& date) {
  return CivilDate{date.year, date.month, 1};
}

CivilDate last_day_of_month(const CivilDate& date) {
  year_month_day ymd =
      year{date.year} / month{static_cast<unsigned>(date.month)} /
      std::chrono::last;
  return from_ymd(ymd);
}

CivilDate first_day_of_quarter(const CivilDate& date) {
  int qm = ((date.month - 1) / 3) * 3 + 1;
  return CivilDate{date.year, qm, 1};
}

CivilDate last_day_of_quarter(const CivilDate& date) {
  int qm = ((date.month - 1) / 3) * 3 + 3;
  return last_day_of_month(CivilDate{date.year, qm, 1});
}

CivilDate first_day_of_week(const CivilDate& date) {
  sys_days sd{to_ymd(date)};
  std::chrono::weekday wd{sd};
  // iso_encoding(): Monday = 1 ... Sunday = 7.
  int back = int(wd.iso_encoding()) - 1;
  return from_ymd(year_month_day{sd - days{back}});
}

}  // namespace groundpilot
