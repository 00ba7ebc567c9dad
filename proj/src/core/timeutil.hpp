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

#pragma once

#include <cstdint>
#include <string>

namespace groundpilot {

// Calendar date in UTC. All date arithmetic in the project is UTC-only.
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const CivilDate&) const = default;
};

// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z".
// Returns epoch seconds UTC. Throws Error(kParse) on malformed input.
std::int64_t parse_timestamp(const std::string& text);

// ISO 8601 UTC, seconds resolution ("2025-01-10T09:30:00Z").
std::string format_timestamp(std::int64_t epoch_seconds);

std::string format_date(const CivilDate& date);
CivilDate parse_date(const std::string& text);

CivilDate epoch_to_date(std::int64_t epoch_seconds);
std::int64_t date_to_epoch(const CivilDate& date);  // 00:00:00 UTC

CivilDate add_days(const CivilDate& date, int delta);
CivilDate first_day_of_month(const CivilDate& date);
CivilDate last_day_of_month(const CivilDate& date);
// Quarters are calendar quarters (Jan-Mar, Apr-Jun, Jul-Sep, Oct-Dec).
CivilDate first_day_of_quarter(const CivilDate& date);
CivilDate last_day_of_quarter(const CivilDate& date);
// ISO weeks, Monday through Sunday.
CivilDate first_day_of_week(const CivilDate& date);

}  // namespace groundpilot
