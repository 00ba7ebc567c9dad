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

#include <chrono>
#include <cstdint>
#include <memory>

namespace groundpilot {

// Injectable time source. All pipeline timestamps and latency measurements go
// through a Clock so that runs are reproducible under a fixed clock.
class Clock {
 public:
  virtual ~Clock() = default;
  // Milliseconds since the Unix epoch, UTC.
  virtual std::int64_t now_ms() const = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() const override {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  }
};

// Fixed or manually advanced clock for deterministic tests.
class FixedClock final : public Clock {
 public:
  explicit FixedClock(std::int64_t epoch_ms) : now_ms_(epoch_ms) {}
  std::int64_t now_ms() const override { return now_ms_; }
  void set_ms(std::int64_t epoch_ms) { now_ms_ = epoch_ms; }
  void advance_ms(std::int64_t delta) { now_ms_ += delta; }

 private:
  std::int64_t now_ms_;
};

inline std::shared_ptr<Clock> system_clock_shared() {
  return std::make_shared<SystemClock>();
}

}  // namespace groundpilot
